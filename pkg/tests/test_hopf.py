import pytest

from qbw.coalgebra import Coalgebra, cop, is_coalgebra_map, tensor_coalgebra, validate_coalgebra
from qbw.field import FieldSpec
from qbw.hopf import (HopfAlgebra, NoAntipode, compute_antipode, convolution, hopf_cop, hopf_op, validate_bialgebra,
                      validate_hopf)
from qbw.linalg import Matrix, kron
from qbw.zoo import cyclic_group, dual_group_algebra, group_algebra, parse_group, symmetric_group, taft_hopf

Q = FieldSpec.rationals()


def test_taft2_relations():
    H = taft_hopf(2)
    g, x, one = H.element("g^1x^0"), H.element("g^0x^1"), H.element("g^0x^0")
    assert H.dim == 4
    assert H.mul(g, g) == one
    assert H.mul(x, x).is_zero()
    assert H.mul(x, g) == H.mul(g, x).scale(H.field.from_fraction(-1))


def test_taft3_antipode_on_x():
    H = taft_hopf(3)
    f = H.field
    x, g2 = H.element("g^0x^1"), H.element("g^2x^0")
    # Delta(x) = 1 (x) x + x (x) g, so S(x) = -x g^-1
    assert H.antipode.apply(x.data) == H.mul(x, g2).scale(f.from_fraction(-1)).data
    assert validate_hopf(H).ok
    assert H.bijective_antipode
    assert H.S(6).is_identity() and not H.S(2).is_identity()


@pytest.mark.parametrize("name", ["S3", "D8", "Z/4"])
def test_group_and_dual_group_algebras(name):
    G = parse_group(name)
    for H in (group_algebra(G), dual_group_algebra(G)):
        assert validate_hopf(H).ok
        assert H.S(2).is_identity()


def test_group_algebra_antipode_is_inverse():
    G = symmetric_group(3)
    H = group_algebra(G)
    for a in G.elements:
        assert H.antipode.apply({G.index(a): Q.one}) == {G.index(G.inv(a)): Q.one}


def test_antipode_is_convolution_inverse():
    H = taft_hopf(3)
    e = H.eta @ H.counit
    assert convolution(H.identity, H.antipode, H.delta, H.mu) == e
    assert convolution(H.antipode, H.identity, H.delta, H.mu) == e


def test_bialgebra_without_antipode():
    # the monoid {1, a} with a^2 = a
    c = Coalgebra.grouplike(Q, ["1", "a"])
    mu = Matrix.from_entries(Q, 2, 4, {(0, 0): 1, (1, 1): 1, (1, 2): 1, (1, 3): 1})
    h = HopfAlgebra(c, mu, [1, 0], require_antipode=False)
    assert validate_bialgebra(h).ok
    assert isinstance(compute_antipode(h), NoAntipode)
    with pytest.raises(ValueError):
        HopfAlgebra(c, mu, [1, 0])


def test_op_and_cop():
    H = taft_hopf(3)
    for h in (hopf_op(H), hopf_cop(H)):
        assert validate_hopf(h).ok
        assert h.antipode == H.antipode_inverse


def test_coalgebra_tools():
    H = taft_hopf(2)
    c = H.coalg
    assert validate_coalgebra(c).ok and validate_coalgebra(cop(c)).ok
    assert not c.is_cocommutative()
    assert group_algebra(cyclic_group(3)).coalg.is_cocommutative()
    cc = tensor_coalgebra(c, c)
    assert validate_coalgebra(cc).ok
    # the multiplication is a coalgebra map H (x) H -> H
    assert is_coalgebra_map(H.mu, cc, c)


def test_corrupted_multiplication_fails():
    H = taft_hopf(2)
    cols = [dict(col) for col in H.mu.cols]
    cols[1] = {k: H.field.from_fraction(2) for k in cols[1]}
    bad = HopfAlgebra(H.coalg, Matrix(H.field, 4, 16, cols), H.unit, require_antipode=False)
    assert not validate_bialgebra(bad).ok
