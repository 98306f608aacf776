import pytest

from qbw.coalgebra import flip
from qbw.ladder import LadderObstruction, regularity_ladder, very_strong_regularity
from qbw.linalg import kron
from qbw.qbrace import (QBrace, antipode_action_check, antipode_tuple, bicrossed_product, bullet_tower,
                        matched_pair_check, qbrace_from_solution, qbrace_validate, s_antipode_compat,
                        skew_brace_check, solution_from_qbrace, times_layer, weak_braiding_check)
from qbw.hopf import validate_hopf


def test_taft3_action_values(zoo):
    qb = zoo("taft(3)")
    H, f = qb.hopf, qb.field
    x, g = H.labels.index("g^0x^1"), H.labels.index("g^1x^0")
    xi = f.zeta()
    n = qb.dim
    assert qb.dot.cols[x * n + g] == {x: f.pow(xi, 2)}
    assert qb.dpu.cols[x * n + g] == {x: xi}
    assert qb.dot.cols[x * n + x] == {}


@pytest.mark.parametrize("name,braiding", [("taft(2)", True), ("taft(3)", False)])
def test_taft_validates(zoo, name, braiding):
    qb = zoo(name)
    rep = qbrace_validate(qb)
    assert rep.ok
    assert rep.data["braiding"] is braiding
    assert skew_brace_check(qb) is braiding


def test_three_characterisations_agree_on_broken_input(zoo):
    qb = zoo("taft(3)")
    bad = QBrace(qb.hopf, qb.dpu, qb.dot)
    rep = qbrace_validate(bad, deep=False)
    wb = weak_braiding_check(bad.hopf, bad.s)
    mp = matched_pair_check(bad.hopf, bad.hopf, bad.solution.s2, bad.solution.s1)
    assert rep.ok == wb.ok == mp.ok


def test_solution_roundtrip(zoo):
    for name in ("taft(2)", "group_conjugation(S3)", "dual_dihedral(2,3)"):
        qb = zoo(name)
        assert qbrace_from_solution(qb.hopf, solution_from_qbrace(qb).s) == qb


def test_bicrossed_product(zoo):
    qb = zoo("taft(2)")
    h = bicrossed_product(qb.hopf, qb.hopf, qb.solution.s2, qb.solution.s1)
    assert h.dim == 16
    assert validate_hopf(h).ok


def test_printed_antipode_tuples():
    # the two families of worked examples, for j = 1..6
    assert [antipode_tuple(j) for j in range(1, 7)] == [
        (1, 2), (2, 1, 3), (2, 4, 1, 3), (3, 1, 5, 2, 4), (3, 6, 1, 5, 2, 4), (4, 1, 7, 2, 6, 3, 5)]
    assert [antipode_tuple(-j) for j in range(1, 7)] == [
        (2, 1), (2, 3, 1), (3, 1, 4, 2), (3, 5, 1, 4, 2), (4, 1, 6, 2, 5, 3), (4, 7, 1, 6, 2, 5, 3)]
    with pytest.raises(ValueError):
        antipode_tuple(0)


@pytest.mark.parametrize("j", [-3, -2, -1, 1, 2, 3])
def test_antipode_actions_taft3(zoo, j):
    assert antipode_action_check(zoo("taft(3)"), j).ok


def test_s_antipode_compat(zoo):
    for name in ("taft(2)", "taft(3)", "group_conjugation(S3)"):
        assert s_antipode_compat(zoo(name)).ok


def test_ladder_closed_forms(zoo):
    qb = zoo("taft(3)")
    H = qb.hopf
    lad = regularity_ladder(qb.qmagma, -2, 2)
    assert not isinstance(lad, LadderObstruction)
    for i in lad.indices:
        assert lad.p[i] == qb.dot @ kron(H.identity, H.S(2 * i))
        assert lad.d[i] == qb.dpu @ kron(H.identity, H.S(2 * i))
        assert lad.gp[i] == qb.dot @ kron(H.identity, H.S(2 * i - 1))
        assert lad.gd[i] == qb.dpu @ kron(H.identity, H.S(2 * i + 1))
    assert not isinstance(very_strong_regularity(qb.qmagma), LadderObstruction)


def test_times_layer(zoo):
    for name in ("taft(3)", "group_conjugation(S3)"):
        assert times_layer(zoo(name)).ok


def test_skew_brace_is_doubletimes_flip(zoo):
    qb = zoo("dual_dihedral(2,1)")
    assert qb.doubletimes == qb.times @ flip(qb.field, qb.dim)


def test_bullet_tower(zoo):
    qb = zoo("group_conjugation(S3)")
    t1 = bullet_tower(qb, 1)
    assert qbrace_validate(t1).ok
    assert t1.hopf.mu == qb.hopf.mu  # a skew-brace input gives H back
    t3 = bullet_tower(zoo("taft(3)"), 1)
    assert qbrace_validate(t3, deep=False).ok
    assert t3.hopf.mu != zoo("taft(3)").hopf.mu


def test_op_and_tilde(zoo):
    qb = zoo("taft(3)")
    assert qbrace_validate(qb.op(), deep=False).ok
    assert qbrace_validate(qb.tilde(), deep=False).ok
