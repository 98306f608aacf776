import pytest

from qbw.analysis import (CounitNonzero, NotAnIdeal, a_plus_h_ideal, coideal_of, ideal_report, is_coideal,
                          q_commutator, qbrace_ideal_closure, quotient_qbrace, skew_quotient_by_socle, socle,
                          sub_qbrace_check)
from qbw.linalg import Subspace
from qbw.skewbrace import skew_brace_check
from qbw.zoo import build, cyclic_group, group_algebra, parse_group, trivial_qbrace


def _vec(h, **coeffs):
    f = h.field
    return {h.labels.index(k): f.from_int(v) for k, v in coeffs.items()}


def test_coideal_of_group_like_difference():
    h = group_algebra(cyclic_group(2))
    a = coideal_of(h, _vec(h, g1=1, g0=-1))
    assert a.rank == 1 and is_coideal(h, a)


def test_coideal_of_skew_primitive_is_its_line(zoo):
    h = zoo("taft(2)").hopf
    v = _vec(h, **{"g^0x^1": 1})
    a = coideal_of(h, v)
    assert a == Subspace.span(h.field, h.dim, [v])


def test_coideal_of_zero_and_counit_guard(zoo):
    h = zoo("taft(2)").hopf
    assert coideal_of(h, {}).rank == 0
    with pytest.raises(CounitNonzero):
        coideal_of(h, _vec(h, **{"g^1x^0": 1}))


def test_closure_of_nothing_is_zero(zoo):
    assert qbrace_ideal_closure(zoo("taft(2)"), []).rank == 0


def test_augmentation_ideal_of_conjugation():
    qb = build("group_conjugation(S3)")
    h = qb.hopf
    one = h.labels.index("p123")
    gens = [{one: h.field.from_int(-1), j: h.field.one} for j in range(h.dim) if j != one]
    ideal = qbrace_ideal_closure(qb, gens)
    assert ideal.rank == 5
    quot = quotient_qbrace(qb, ideal)
    assert quot.qbrace.dim == 1 and quot.report.ok


def test_quotient_refuses_non_ideal(zoo):
    qb = zoo("taft(2)")
    h = qb.hopf
    line = Subspace.span(h.field, h.dim, [_vec(h, **{"g^0x^1": 1})])
    assert not ideal_report(qb, line).ok
    with pytest.raises(NotAnIdeal):
        quotient_qbrace(qb, line)


def test_taft3_q_commutator(zoo):
    # regression values from the first full run
    ideal, quot = q_commutator(zoo("taft(3)"))
    assert ideal.rank == 6
    assert quot.qbrace.dim == 3 and skew_brace_check(quot.qbrace)


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_skew_braces_have_zero_q_commutator(zoo, case):
    ideal, quot = q_commutator(zoo(f"dual_dihedral(2,{case})"))
    assert ideal.rank == 0 and quot.qbrace.dim == 8


def test_trivial_on_nonabelian_group():
    # the bracket is the group commutator, so the quotient is k[S3 / A3]
    ideal, quot = q_commutator(trivial_qbrace(group_algebra(parse_group("S3"))))
    assert ideal.rank == 4 and quot.qbrace.dim == 2


def test_trivial_on_abelian_group():
    ideal, _ = q_commutator(trivial_qbrace(group_algebra(cyclic_group(4))))
    assert ideal.rank == 0


def test_socle_of_trivial_is_everything():
    qb = trivial_qbrace(group_algebra(parse_group("S3")))
    data = socle(qb)
    assert data.report.ok
    assert data.soc.rank == data.lsoc.rank == data.rsoc.rank == 6


def test_socle_of_conjugation_is_spanned_by_the_center():
    g = parse_group("S3")
    qb = build("group_conjugation(S3)")
    data = socle(qb)
    assert data.report.ok
    h = qb.hopf
    center = [{g.index(z): h.field.one} for z in g.center()]
    assert data.soc == Subspace.span(h.field, h.dim, center)


@pytest.mark.parametrize("name", ["taft(2)", "taft(3)", "dual_dihedral(2,1)", "group_conjugation(S3)"])
def test_socle_plus_is_an_ideal(zoo, name):
    qb = zoo(name)
    data = socle(qb)
    assert data.report.ok
    ideal = a_plus_h_ideal(qb, data.soc)
    assert ideal_report(qb, ideal).ok
    assert sub_qbrace_check(qb, data.soc).ok


def test_skew_quotient_by_socle():
    quot = skew_quotient_by_socle(build("group_conjugation(S3)"))
    assert quot is not None and skew_brace_check(quot.qbrace)
    assert skew_quotient_by_socle(build("taft(2)")) is None
