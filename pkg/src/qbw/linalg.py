"""Exact matrices over a :class:`~qbw.field.FieldSpec`.

Matrices are stored column by column as ``{row: raw}`` dictionaries, so the
operators on X^3 for dim X = 9 (729 x 729, a handful of entries per column)
stay cheap.  Every matrix also remembers the tensor factorisation of its
row and column spaces (``rdims`` / ``cdims``); the tensor evaluator in
:mod:`qbw.tensor` uses it to act on single tensor slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .field import FieldMismatch, FieldSpec, Scalar

__all__ = [
    "DimensionMismatch",
    "Matrix",
    "Singular",
    "Subspace",
    "Vector",
    "invert",
    "kron",
    "mat_mul",
    "nullspace",
    "rref",
]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Singular:
    """Verdict returned by :func:`invert` for a non-invertible matrix."""

    rank: int
    size: int

    def __bool__(self) -> bool:
        return False


def _clean(field: FieldSpec, col: dict) -> dict:
    iz = field.is_zero
    return {i: v for i, v in col.items() if not iz(v)}


class Vector:
    """A sparse vector; ``data`` maps index to raw scalar."""

    __slots__ = ("field", "dim", "data")

    def __init__(self, field: FieldSpec, dim: int, data: dict | None = None):
        self.field = field
        self.dim = dim
        self.data = _clean(field, data) if data else {}

    @classmethod
    def basis(cls, field: FieldSpec, dim: int, i: int) -> "Vector":
        return cls(field, dim, {i: field.one})

    @classmethod
    def from_list(cls, field: FieldSpec, values: Sequence) -> "Vector":
        return cls(field, len(values), {i: field.coerce(v) for i, v in enumerate(values)})

    def to_list(self) -> list:
        z = self.field.zero
        return [self.data.get(i, z) for i in range(self.dim)]

    def __getitem__(self, i: int) -> Scalar:
        return Scalar(self.field, self.data.get(i, self.field.zero))

    def __add__(self, other: "Vector") -> "Vector":
        _check_same(self.field, other.field)
        out = dict(self.data)
        add = self.field.add
        for i, v in other.data.items():
            out[i] = add(out[i], v) if i in out else v
        return Vector(self.field, self.dim, out)

    def __sub__(self, other: "Vector") -> "Vector":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "Vector":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Vector(self.field, self.dim, {i: mul(c, v) for i, v in self.data.items()})

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vector)
            and self.field is other.field
            and self.dim == other.dim
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.data.items()))))

    def __repr__(self) -> str:
        fmt = self.field.format
        items = ", ".join(f"{i}: {fmt(v)}" for i, v in sorted(self.data.items()))
        return f"Vector(dim={self.dim}, {{{items}}})"


def _check_same(a: FieldSpec, b: FieldSpec) -> None:
    if a is not b:
        raise FieldMismatch(f"{a} vs {b}")


class Matrix:
    """Immutable exact matrix with sparse column storage."""

    __slots__ = ("field", "nrows", "ncols", "cols", "rdims", "cdims", "_decoded")

    def __init__(
        self,
        field: FieldSpec,
        nrows: int,
        ncols: int,
        cols: list[dict] | None = None,
        rdims: tuple[int, ...] | None = None,
        cdims: tuple[int, ...] | None = None,
        *,
        clean: bool = True,
    ):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._decoded = None
        if cols is None:
            cols = [{} for _ in range(ncols)]
        elif clean:
            cols = [_clean(field, c) for c in cols]
        if len(cols) != ncols:
            raise DimensionMismatch("column count does not match ncols")
        self.cols = cols
        self.rdims = tuple(rdims) if rdims is not None else (nrows,)
        self.cdims = tuple(cdims) if cdims is not None else (ncols,)
        if prod(self.rdims) != nrows or prod(self.cdims) != ncols:
            raise DimensionMismatch("tensor shape does not match matrix size")

    # constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field, nrows, ncols, rdims=None, cdims=None) -> "Matrix":
        return cls(field, nrows, ncols, None, rdims, cdims)

    @classmethod
    def identity(cls, field, n, dims=None) -> "Matrix":
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)], dims, dims, clean=False)

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], rdims=None, cdims=None) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            for j, v in enumerate(row):
                cols[j][i] = field.coerce(v)
        return cls(field, nrows, ncols, cols, rdims, cdims)

    @classmethod
    def from_columns(cls, field, nrows, columns: Iterable[dict], rdims=None, cdims=None) -> "Matrix":
        cols = [dict(c) for c in columns]
        return cls(field, nrows, len(cols), cols, rdims, cdims)

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries: dict, rdims=None, cdims=None) -> "Matrix":
        cols = [{} for _ in range(ncols)]
        for (i, j), v in entries.items():
            cols[j][i] = field.coerce(v)
        return cls(field, nrows, ncols, cols, rdims, cdims)

    @classmethod
    def row_vector(cls, field, values: Sequence, cdims=None) -> "Matrix":
        """A 1 x n matrix (a linear functional) with 0-slot row space."""
        cols = [{0: field.coerce(v)} for v in values]
        return cls(field, 1, len(values), cols, (), cdims)

    @classmethod
    def column_vector(cls, vec: Vector, rdims=None) -> "Matrix":
        """A n x 1 matrix with 0-slot column space (an element)."""
        return cls(vec.field, vec.dim, 1, [dict(vec.data)], rdims, ())

    # accessors ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, self.field.zero)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self.entry(i, j))

    def column(self, j: int) -> Vector:
        return Vector(self.field, self.nrows, self.cols[j])

    def to_rows(self) -> list[list]:
        z = self.field.zero
        rows = [[z] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def with_dims(self, rdims=None, cdims=None) -> "Matrix":
        return Matrix(
            self.field, self.nrows, self.ncols, self.cols,
            rdims if rdims is not None else self.rdims,
            cdims if cdims is not None else self.cdims,
            clean=False,
        )

    # algebra -------------------------------------------------------------

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse raw vector ``{index: value}``."""
        f = self.field
        add, mul, iz = f.add, f.mul, f.is_zero
        out: dict = {}
        cols = self.cols
        for j, c in vec.items():
            for i, v in cols[j].items():
                w = mul(c, v)
                if i in out:
                    out[i] = add(out[i], w)
                else:
                    out[i] = w
        return {i: v for i, v in out.items() if not iz(v)}

    def __call__(self, vec: Vector) -> Vector:
        if vec.dim != self.ncols:
            raise DimensionMismatch(f"vector of dim {vec.dim} into {self.shape}")
        return Vector(self.field, self.nrows, self.apply(vec.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        add = self.field.add
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = add(c[i], v) if i in c else v
            cols.append(c)
        return Matrix(self.field, self.nrows, self.ncols, cols, self.rdims, self.cdims)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        cols = [{i: neg(v) for i, v in c.items()} for c in self.cols]
        return Matrix(self.field, self.nrows, self.ncols, cols, self.rdims, self.cdims, clean=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        cols = [{i: mul(c, v) for i, v in col.items()} for col in self.cols]
        return Matrix(self.field, self.nrows, self.ncols, cols, self.rdims, self.cdims)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, self.row_dicts(), self.cdims, self.rdims, clean=False)

    def power(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            inv = invert(self)
            if isinstance(inv, Singular):
                raise ZeroDivisionError("negative power of a singular matrix")
            return inv.power(-k)
        result = Matrix.identity(self.field, self.nrows, self.rdims)
        base = self
        while k:
            if k & 1:
                result = base @ result
            base = base @ base
            k >>= 1
        return result

    def _same_shape(self, other: "Matrix") -> None:
        _check_same(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.shape == other.shape and self.cols == other.cols

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(sorted(c.items())) for c in self.cols)))

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        """(row, col) of the first differing entry in column order, or None."""
        self._same_shape(other)
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                rows = sorted(set(a) | set(b))
                for i in rows:
                    if a.get(i) != b.get(i):
                        return (i, j)
        return None

    def is_zero(self) -> bool:
        return not any(self.cols)

    def is_identity(self) -> bool:
        one = self.field.one
        return self.nrows == self.ncols and all(c == {j: one} for j, c in enumerate(self.cols))

    def rank(self) -> int:
        return len(rref(self.row_dicts(), self.field)[0])

    def invert(self) -> "Matrix | Singular":
        return invert(self)

    def nullspace(self) -> list[Vector]:
        return nullspace(self)

    def solve(self, rhs: "Matrix") -> "Matrix | None":
        """Some X with self @ X = rhs, or None when inconsistent."""
        return solve(self, rhs)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over {self.field}, nnz={self.nnz()})"

    def pretty(self) -> str:
        fmt = self.field.format
        return "\n".join("[" + ", ".join(fmt(v) for v in row) + "]" for row in self.to_rows())


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product ``a @ b``."""
    _check_same(a.field, b.field)
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"{a.shape} @ {b.shape}")
    cols = [a.apply(c) for c in b.cols]
    return Matrix(a.field, a.nrows, b.ncols, cols, a.rdims, b.cdims, clean=False)


def kron(*ms: Matrix) -> Matrix:
    """Kronecker product; the index of e_i (x) e_j is ``i * dim + j``."""
    if not ms:
        raise ValueError("kron of nothing")
    out = ms[0]
    for m in ms[1:]:
        out = _kron2(out, m)
    return out


def _kron2(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a.field, b.field)
    mul = a.field.mul
    nb = b.nrows
    cols = []
    for ca in a.cols:
        for cb in b.cols:
            col = {}
            for i, u in ca.items():
                base = i * nb
                for k, v in cb.items():
                    col[base + k] = mul(u, v)
            cols.append(col)
    return Matrix(
        a.field, a.nrows * b.nrows, a.ncols * b.ncols, cols,
        a.rdims + b.rdims, a.cdims + b.cdims,
        clean=a.field.kind == "prime",
    )


def rref(rows: list[dict], field: FieldSpec, ncols: int | None = None) -> tuple[list[int], list[dict]]:
    """Reduced row echelon form of sparse rows.

    Pivots are taken in column order, first available row first.  Returns
    the pivot columns and the nonzero reduced rows (row k has pivot
    ``pivots[k]`` with entry one).
    """
    add, mul, neg, inv, iz = field.add, field.mul, field.neg, field.inv, field.is_zero
    rows = [dict(r) for r in rows if r]
    if ncols is None:
        ncols = 1 + max((max(r) for r in rows), default=-1)
    pivots: list[int] = []
    done: list[dict] = []
    pending = rows
    for c in range(ncols):
        if not pending:
            break
        pi = next((k for k, r in enumerate(pending) if c in r), None)
        if pi is None:
            continue
        prow = pending.pop(pi)
        f = inv(prow[c])
        prow = {j: mul(f, v) for j, v in prow.items()}
        rest = []
        for r in pending:
            if c in r:
                g = neg(r[c])
                for j, v in prow.items():
                    w = mul(g, v)
                    if j in r:
                        s = add(r[j], w)
                        if iz(s):
                            del r[j]
                        else:
                            r[j] = s
                    else:
                        r[j] = w
                if r:
                    rest.append(r)
            else:
                rest.append(r)
        pending = rest
        for r in done:
            if c in r:
                g = neg(r[c])
                for j, v in prow.items():
                    w = mul(g, v)
                    if j in r:
                        s = add(r[j], w)
                        if iz(s):
                            del r[j]
                        else:
                            r[j] = s
                    else:
                        r[j] = w
        pivots.append(c)
        done.append(prow)
    return pivots, done


def invert(a: Matrix) -> Matrix | Singular:
    """Exact inverse by Gauss-Jordan elimination, or :class:`Singular`."""
    if a.nrows != a.ncols:
        raise DimensionMismatch("invert needs a square matrix")
    n = a.nrows
    one = a.field.one
    rows = a.row_dicts()
    for i, r in enumerate(rows):
        r[n + i] = one
    pivots, red = rref(rows, a.field, 2 * n)
    rank = sum(1 for p in pivots if p < n)
    if rank < n:
        return Singular(rank, n)
    cols: list[dict] = [{} for _ in range(n)]
    for k, r in enumerate(red):
        i = pivots[k]
        for j, v in r.items():
            if j >= n:
                cols[j - n][i] = v
    return Matrix(a.field, n, n, cols, a.cdims, a.rdims, clean=False)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """A solution X of ``a @ X = b`` (free variables set to zero) or None."""
    _check_same(a.field, b.field)
    if a.nrows != b.nrows:
        raise DimensionMismatch("solve: row counts differ")
    n = a.ncols
    rows = a.row_dicts()
    for j, c in enumerate(b.cols):
        for i, v in c.items():
            rows[i][n + j] = v
    pivots, red = rref(rows, a.field, n + b.ncols)
    if any(p >= n for p in pivots):
        return None
    cols: list[dict] = [{} for _ in range(b.ncols)]
    for k, r in enumerate(red):
        i = pivots[k]
        for j, v in r.items():
            if j >= n:
                cols[j - n][i] = v
    return Matrix(a.field, n, b.ncols, cols, a.cdims, b.cdims, clean=False)


def nullspace(a: Matrix) -> list[Vector]:
    """Exact basis of ker a, one vector per free column (ascending)."""
    field = a.field
    pivots, red = rref(a.row_dicts(), field, a.ncols)
    pivset = set(pivots)
    neg = field.neg
    basis = []
    for free in range(a.ncols):
        if free in pivset:
            continue
        data = {free: field.one}
        for k, r in enumerate(red):
            if free in r:
                data[pivots[k]] = neg(r[free])
        basis.append(Vector(field, a.ncols, data))
    return basis


class Subspace:
    """A subspace of field^dim held as a reduced row echelon basis."""

    __slots__ = ("field", "dim", "pivots", "rows")

    def __init__(self, field: FieldSpec, dim: int, pivots: list[int], rows: list[dict]):
        self.field = field
        self.dim = dim
        self.pivots = pivots
        self.rows = rows

    @classmethod
    def span(cls, field: FieldSpec, dim: int, vectors: Iterable[Vector | dict]) -> "Subspace":
        rows = [v.data if isinstance(v, Vector) else v for v in vectors]
        pivots, red = rref(rows, field, dim)
        return cls(field, dim, pivots, red)

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "Subspace":
        return cls(field, dim, [], [])

    @classmethod
    def full(cls, field: FieldSpec, dim: int) -> "Subspace":
        return cls.span(field, dim, [{i: field.one} for i in range(dim)])

    @classmethod
    def kernel(cls, m: Matrix) -> "Subspace":
        return cls.span(m.field, m.ncols, nullspace(m))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[Vector]:
        return [Vector(self.field, self.dim, r) for r in self.rows]

    def reduce(self, v: dict) -> dict:
        """Remainder of v after subtracting its pivot components."""
        f = self.field
        add, mul, neg, iz = f.add, f.mul, f.neg, f.is_zero
        r = dict(v)
        for p, row in zip(self.pivots, self.rows):
            if p in r:
                g = neg(r[p])
                for j, w in row.items():
                    t = mul(g, w)
                    if j in r:
                        s = add(r[j], t)
                        if iz(s):
                            del r[j]
                        else:
                            r[j] = s
                    else:
                        r[j] = t
        return r

    def contains(self, v: Vector | dict) -> bool:
        data = v.data if isinstance(v, Vector) else v
        return not self.reduce(data)

    def contains_all(self, vs: Iterable[Vector | dict]) -> bool:
        return all(self.contains(v) for v in vs)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_all(self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.dim, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, self.dim)
        # solve sum a_i u_i - sum b_j w_j = 0
        f = self.field
        cols = [dict(r) for r in self.rows] + [{i: f.neg(v) for i, v in r.items()} for r in other.rows]
        m = Matrix(f, self.dim, len(cols), cols, clean=False)
        k = len(self.rows)
        vecs = []
        for null in nullspace(m):
            acc: dict = {}
            for i, a in null.data.items():
                if i < k:
                    for j, w in self.rows[i].items():
                        t = f.mul(a, w)
                        acc[j] = f.add(acc[j], t) if j in acc else t
            vecs.append(_clean(f, acc))
        return Subspace.span(f, self.dim, vecs)

    def complement_indices(self) -> list[int]:
        """Coordinates not used as pivots: a basis of a complement."""
        ps = set(self.pivots)
        return [i for i in range(self.dim) if i not in ps]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field is other.field
            and self.dim == other.dim
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.pivots)))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.rank} in {self.dim})"
