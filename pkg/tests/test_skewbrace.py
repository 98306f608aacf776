import pytest

from qbw.skewbrace import (GVSkewBrace, NotASkewBrace, cocycle_bridge, from_gv, from_linear_qcycle, gv_from_cocycle,
                           gv_module_criterion, skew_brace_by_modules, skew_brace_report, subalgebra_criterion, to_gv,
                           to_linear_qcycle, validate_cocycle, validate_gv, validate_linear_qcycle)
from qbw.zoo import BadParams, dual_dihedral
from qbw.field import FieldSpec


def test_taft2_roundtrips(zoo):
    qb = zoo("taft(2)")
    gv = to_gv(qb)
    lq = to_linear_qcycle(qb)
    c = cocycle_bridge(gv)
    assert validate_gv(gv).ok and validate_linear_qcycle(lq).ok and validate_cocycle(c).ok
    assert from_gv(gv) == qb
    assert from_linear_qcycle(lq) == qb
    assert gv_from_cocycle(c) == gv
    assert to_gv(lq) == gv


def test_taft3_is_refused(zoo):
    qb = zoo("taft(3)")
    with pytest.raises(NotASkewBrace):
        to_gv(qb)
    with pytest.raises(NotASkewBrace):
        to_linear_qcycle(qb)
    assert not skew_brace_by_modules(qb)
    assert not subalgebra_criterion(qb)


def test_broken_gv_fails_validation(zoo):
    gv = to_gv(zoo("taft(2)"))
    bad = GVSkewBrace(gv.hopf, gv.hopf.mu, gv.T_times)
    assert not validate_gv(bad).ok


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_dual_dihedral_cases(zoo, case):
    qb = zoo(f"dual_dihedral(2,{case})")
    rep = skew_brace_report(qb)
    assert rep.ok
    assert gv_module_criterion(to_gv(qb)).ok


def test_dual_dihedral_needs_odd_characteristic():
    with pytest.raises(BadParams):
        dual_dihedral(2, 1, FieldSpec.prime(2))
    assert dual_dihedral(2, 1, FieldSpec.prime(5)).dim == 8


def test_group_conjugation_report(zoo):
    assert skew_brace_report(zoo("group_conjugation(S3)")).ok
