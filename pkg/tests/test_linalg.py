import random

import pytest
import sympy
from gmpy2 import mpq

from qbw.field import FieldSpec
from qbw.linalg import DimensionMismatch, Matrix, Singular, Subspace, Vector, invert, kron

Q = FieldSpec.rationals()
Q3 = FieldSpec.cyclotomic(3)


def random_matrix(field, n, m, rng, density=0.7):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(m):
            if rng.random() > density:
                row.append(field.zero)
                continue
            if field.kind == "cyclotomic":
                row.append(tuple(mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(field.degree)))
            else:
                row.append(field.from_fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        rows.append(row)
    return Matrix.from_rows(field, rows)


def test_inverse_matches_sympy_over_q():
    rng = random.Random(7)
    a = random_matrix(Q, 6, 6, rng, 0.9)
    inv = invert(a)
    want = sympy.Matrix([[sympy.Rational(str(v)) for v in r] for r in a.to_rows()]).inv()
    got = sympy.Matrix([[sympy.Rational(str(v)) for v in r] for r in inv.to_rows()])
    assert got == want


@pytest.mark.parametrize("seed", range(5))
def test_invert_roundtrip_q_zeta3(seed):
    rng = random.Random(seed)
    a = random_matrix(Q3, 8, 8, rng)
    inv = invert(a)
    if isinstance(inv, Singular):
        assert a.rank() < 8
        return
    assert (a @ inv).is_identity() and (inv @ a).is_identity()


@pytest.mark.parametrize("seed", range(5))
def test_nullspace_q_zeta3(seed):
    rng = random.Random(100 + seed)
    a = random_matrix(Q3, 6, 8, rng, 0.5)
    ns = a.nullspace()
    assert len(ns) == 8 - a.rank()
    for v in ns:
        assert (a @ Matrix.column_vector(v)).is_zero()


def test_singular_carries_rank():
    a = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    inv = invert(a)
    assert isinstance(inv, Singular) and not inv and inv.rank == 1


def test_kron_indexing_convention():
    a = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    b = Matrix.from_rows(Q, [[0, 1], [1, 0]])
    k = kron(a, b)
    # entry ((i, j), (p, q)) is a[i,p] * b[j,q], with (i, j) at i*2 + j
    assert k[1 * 2 + 0, 0 * 2 + 1] == a[1, 0] * b[0, 1]
    assert k.rdims == (2, 2)


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        Matrix.identity(Q, 2) @ Matrix.identity(Q, 3)


def test_subspace_operations():
    e = [Vector.basis(Q, 4, i).data for i in range(4)]
    a = Subspace.span(Q, 4, [e[0], e[1]])
    b = Subspace.span(Q, 4, [e[1], e[2]])
    assert (a + b).rank == 3
    assert a.intersect(b) == Subspace.span(Q, 4, [e[1]])
    assert a.contains({0: mpq(2), 1: mpq(-1)})
    assert not a.contains(e[3])
    assert a <= a + b
    assert sorted(a.complement_indices()) == [2, 3]
    assert a.reduce({0: mpq(1), 3: mpq(5)}) == {3: mpq(5)}
    assert Subspace.kernel(Matrix.from_rows(Q, [[1, 1, 0, 0]])).rank == 3
