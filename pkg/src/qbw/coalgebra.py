"""Finite-dimensional coalgebras given by structure constants."""

from __future__ import annotations

from typing import Sequence

from .field import FieldSpec
from .linalg import DimensionMismatch, Matrix, Vector, kron
from .report import Report
from .tensor import Program, compare_matrices, rearrange

__all__ = [
    "Coalgebra",
    "components",
    "cop",
    "is_coalgebra_map",
    "is_grouplike",
    "sweedler_iterate",
    "tensor_coalgebra",
    "validate_coalgebra",
    "flip",
]


def flip(field: FieldSpec, d: int, e: int | None = None) -> Matrix:
    """tau: V (x) W -> W (x) V."""
    e = d if e is None else e
    return rearrange(field, (d, e), (1, 0))


class Coalgebra:
    """Coalgebra on a basis ``labels``.

    ``delta`` is dim^2 x dim, column j holding Delta(e_j); ``counit`` is the
    1 x dim matrix of epsilon.
    """

    def __init__(self, field: FieldSpec, labels: Sequence[str], delta: Matrix, counit: Matrix):
        d = len(labels)
        if delta.shape != (d * d, d) or counit.shape != (1, d):
            raise DimensionMismatch("structure constants do not match the basis")
        self.field = field
        self.labels = list(labels)
        self.dim = d
        self.delta = delta.with_dims((d, d), (d,))
        self.counit = counit.with_dims((), (d,))
        self._report: Report | None = None

    @classmethod
    def from_table(cls, field: FieldSpec, labels: Sequence[str], table: dict, counit: Sequence) -> "Coalgebra":
        """``table[j]`` lists ``(a, b, coeff)`` with Delta(e_j) = sum coeff e_a (x) e_b."""
        d = len(labels)
        cols = []
        for j in range(d):
            col: dict = {}
            for a, b, c in table.get(j, ()):
                c = field.coerce(c)
                k = a * d + b
                col[k] = field.add(col[k], c) if k in col else c
            cols.append(col)
        delta = Matrix(field, d * d, d, cols, (d, d), (d,))
        return cls(field, labels, delta, Matrix.row_vector(field, counit, (d,)))

    @classmethod
    def grouplike(cls, field: FieldSpec, labels: Sequence[str]) -> "Coalgebra":
        d = len(labels)
        return cls.from_table(field, labels, {j: [(j, j, 1)] for j in range(d)}, [1] * d)

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    @property
    def eps(self) -> list:
        return [self.counit.entry(0, j) for j in range(self.dim)]

    def basis(self, i: int) -> Vector:
        return Vector.basis(self.field, self.dim, i)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def validated(self) -> "Coalgebra":
        rep = validate_coalgebra(self)
        if not rep.ok:
            raise ValueError(rep.render())
        return self

    def iterated_delta(self, n: int) -> Matrix:
        """Delta^(n): X -> X^(n+1), left nested."""
        prog = Program(self.field, (self.dim,))
        for _ in range(n):
            prog.apply(self.delta, 0)
        return prog.matrix()

    def is_cocommutative(self) -> bool:
        return flip(self.field, self.dim) @ self.delta == self.delta

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coalgebra)
            and self.field is other.field
            and self.labels == other.labels
            and self.delta == other.delta
            and self.counit == other.counit
        )

    def __repr__(self) -> str:
        return f"Coalgebra(dim={self.dim}, {self.field})"


def validate_coalgebra(c: Coalgebra) -> Report:
    """Coassociativity and both counit laws, with the first failing basis index."""
    rep = Report(f"coalgebra dim {c.dim}")
    f, d = c.field, c.dim
    ident = Matrix.identity(f, d)
    left = kron(c.delta, ident) @ c.delta
    right = kron(ident, c.delta) @ c.delta
    rep.check("coassociativity", compare_matrices(left, right))
    rep.check("counit_left", compare_matrices((kron(c.counit, ident) @ c.delta).with_dims((d,)), ident))
    rep.check("counit_right", compare_matrices((kron(ident, c.counit) @ c.delta).with_dims((d,)), ident))
    return rep


def cop(c: Coalgebra) -> Coalgebra:
    """The opposite coalgebra, Delta^cop = tau o Delta."""
    return Coalgebra(c.field, c.labels, flip(c.field, c.dim) @ c.delta, c.counit)


def tensor_coalgebra(c: Coalgebra, e: Coalgebra) -> Coalgebra:
    """C (x) D with Delta = (id (x) tau (x) id)(Delta_C (x) Delta_D)."""
    if c.field is not e.field:
        raise DimensionMismatch("coalgebras over different fields")
    f = c.field
    mid = rearrange(f, (c.dim, c.dim, e.dim, e.dim), (0, 2, 1, 3))
    n = c.dim * e.dim
    delta = (mid @ kron(c.delta, e.delta)).with_dims((n, n), (n,))
    counit = kron(c.counit, e.counit).with_dims((), (n,))
    labels = [f"{a}(x){b}" for a in c.labels for b in e.labels]
    return Coalgebra(f, labels, delta, counit)


def is_coalgebra_map(f: Matrix, source: Coalgebra, target: Coalgebra, report: Report | None = None,
                     name: str = "coalgebra_map") -> bool:
    """Delta_target o f = (f (x) f) o Delta_source and eps_target o f = eps_source."""
    if f.shape != (target.dim, source.dim):
        raise DimensionMismatch("map does not fit the coalgebras")
    fl = f.with_dims((target.dim,), (source.dim,))
    lhs = target.delta @ fl
    rhs = kron(fl, fl) @ source.delta
    w1 = compare_matrices(lhs, rhs)
    w2 = compare_matrices(target.counit @ fl, source.counit)
    if report is not None:
        report.check(f"{name}.delta", w1)
        report.check(f"{name}.counit", w2)
    return w1 is None and w2 is None


def components(f: Matrix, source: Coalgebra, targets: Sequence[Coalgebra],
               report: Report | None = None) -> list[Matrix]:
    """f_i = (eps^(i-1) (x) id (x) eps^(n-i)) o f for f: X -> Y_1 (x) ... (x) Y_n.

    When ``report`` is given, the reassembly (f_1 (x) ... (x) f_n) o Delta^(n-1) = f
    is recorded; it holds exactly when f is a coalgebra map.
    """
    n = len(targets)
    dims = tuple(t.dim for t in targets)
    fl = f.with_dims(dims, (source.dim,))
    comps = []
    for i in range(n):
        parts = [t.counit if k != i else t.identity for k, t in enumerate(targets)]
        proj = kron(*parts).with_dims((dims[i],), dims)
        comps.append((proj @ fl).with_dims((dims[i],), (source.dim,)))
    if report is not None:
        back = kron(*comps) @ source.iterated_delta(n - 1)
        report.check("components_reassemble", compare_matrices(back.with_dims(dims), fl))
    return comps


def sweedler_iterate(c: Coalgebra, v: Vector, n: int) -> Vector:
    """(Delta (x) id ...) o ... o Delta applied n times (left nested)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = c.iterated_delta(n)(v)
    if __debug__ and n >= 2:
        # coassociativity means the nesting order is irrelevant; check it
        prog = Program(c.field, (c.dim,))
        for k in range(n):
            prog.apply(c.delta, k)
        alt = Vector(c.field, out.dim, {})
        alt_data: dict = {}
        for key, val in prog.run({(i,): x for i, x in v.data.items()}).items():
            idx = 0
            for k in key:
                idx = idx * c.dim + k
            alt_data[idx] = val
        alt = Vector(c.field, out.dim, alt_data)
        if alt != out:
            raise ArithmeticError("Sweedler iterate depends on nesting: not coassociative")
    return out


def is_grouplike(c: Coalgebra, v: Vector) -> bool:
    if v.is_zero():
        return False
    dv = c.delta(v)
    vv = kron(Matrix.column_vector(v), Matrix.column_vector(v)).column(0)
    eps = c.counit(v)
    return dv == vv and eps == Vector.basis(c.field, 1, 0)
