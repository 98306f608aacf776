"""Built-in examples.

Set-theoretic data is always embedded on a group-like basis; products of
group elements are read left to right.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .braiding import Solution, rack_to_solution
from .coalgebra import Coalgebra, flip as flip_matrix
from .field import FieldSpec
from .hopf import HopfAlgebra
from .linalg import Matrix, kron
from .qbrace import QBrace, qbrace_from_solution
from .tensor import rearrange

__all__ = [
    "BadParams",
    "FiniteGroup",
    "UnknownExample",
    "build",
    "dual_dihedral",
    "dual_group_algebra",
    "flip",
    "group_algebra",
    "group_conjugation",
    "parse_group",
    "rack",
    "taft",
    "trivial_qbrace",
    "ZOO_NAMES",
]


class UnknownExample(ValueError):
    pass


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple
    labels: tuple[str, ...]
    _mul: Callable[[Hashable, Hashable], Hashable]

    def mul(self, a, b):
        return self._mul(a, b)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, a) -> int:
        return self.elements.index(a)

    @property
    def one(self):
        for e in self.elements:
            if all(self.mul(e, g) == g for g in self.elements):
                return e
        raise ValueError("no identity")

    def inv(self, a):
        one = self.one
        for b in self.elements:
            if self.mul(a, b) == one:
                return b
        raise ValueError("no inverse")

    def center(self) -> list:
        return [z for z in self.elements if all(self.mul(z, g) == self.mul(g, z) for g in self.elements)]

    @property
    def abelian(self) -> bool:
        return len(self.center()) == self.order


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParams("cyclic group needs n >= 1")
    return FiniteGroup(f"Z/{n}", tuple(range(n)), tuple(f"g{i}" for i in range(n)), lambda a, b: (a + b) % n)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations as tuples; (a*b)(i) = a(b(i))."""
    elems = tuple(sorted(itertools.permutations(range(n))))
    labels = tuple("p" + "".join(str(i + 1) for i in p) for p in elems)
    return FiniteGroup(f"S{n}", elems, labels, lambda a, b: tuple(a[b[i]] for i in range(n)))


def dihedral_group(m: int) -> FiniteGroup:
    """D_{2m} = <x, y | x^{2m} = y^2 = yxyx = 1>, of order 4m; x^i y^j as (i, j)."""
    if m < 1:
        raise BadParams("dihedral group needs m >= 1")
    n = 2 * m
    elems = tuple((i, j) for j in range(2) for i in range(n))

    def mul(a, b):
        i, j = a
        k, l = b
        return ((i + (-k if j else k)) % n, (j + l) % 2)

    labels = tuple(f"x{i}y{j}" for i, j in elems)
    return FiniteGroup(f"D{n}", elems, labels, mul)


def parse_group(text: str) -> FiniteGroup:
    t = text.strip().replace(" ", "")
    if re.fullmatch(r"S[1-4]", t):
        return symmetric_group(int(t[1:]))
    if m := re.fullmatch(r"D(\d+)", t):
        order = int(m.group(1))
        if order % 4:
            raise BadParams("dihedral groups here have order 4m (x^{2m} = 1)")
        return dihedral_group(order // 4)
    if m := re.fullmatch(r"(?:Z/|C|Z)(\d+)", t):
        return cyclic_group(int(m.group(1)))
    raise BadParams(f"unknown group {text!r}")


def group_algebra(g: FiniteGroup, field: FieldSpec | None = None) -> HopfAlgebra:
    f = field or FieldSpec.rationals()
    n = g.order
    coalg = Coalgebra.grouplike(f, g.labels)
    entries = {}
    for a, x in enumerate(g.elements):
        for b, y in enumerate(g.elements):
            entries[(g.index(g.mul(x, y)), a * n + b)] = 1
    mu = Matrix.from_entries(f, n, n * n, entries, (n,), (n, n))
    unit = [1 if e == g.one else 0 for e in g.elements]
    return HopfAlgebra(coalg, mu, unit)


def dual_group_algebra(g: FiniteGroup, field: FieldSpec | None = None) -> HopfAlgebra:
    """k^G: d_a d_b = delta_{ab} d_a, Delta(d_a) = sum_b d_{ab} (x) d_{b^-1}."""
    f = field or FieldSpec.rationals()
    n = g.order
    table = {}
    for a, x in enumerate(g.elements):
        table[a] = [(g.index(g.mul(x, y)), g.index(g.inv(y)), 1) for y in g.elements]
    counit = [1 if e == g.one else 0 for e in g.elements]
    coalg = Coalgebra.from_table(f, ["d_" + lab for lab in g.labels], table, counit)
    mu = Matrix.from_entries(f, n, n * n, {(a, a * n + a): 1 for a in range(n)}, (n,), (n, n))
    return HopfAlgebra(coalg, mu, [1] * n)


# ---------------------------------------------------------------------------
# Taft algebras


def taft_hopf(n: int) -> HopfAlgebra:
    """T_n over Q(zeta_n): g^n = 1, x^n = 0, xg = zeta gx, Delta(x) = 1 (x) x + x (x) g.

    Basis g^i x^j at index i*n + j.
    """
    if n < 2:
        raise BadParams("Taft algebras need n >= 2")
    f = FieldSpec.cyclotomic(n)
    xi = f.zeta()
    d = n * n

    def idx(i, j):
        return (i % n) * n + j

    entries = {}
    for a in range(d):
        i, j = divmod(a, n)
        for b in range(d):
            k, l = divmod(b, n)
            if j + l < n:
                entries[(idx(i + k, j + l), a * d + b)] = f.pow(xi, j * k)
    mu = Matrix.from_entries(f, d, d * d, entries, (d,), (d, d))
    # Delta is multiplicative: build it on g^i x^j from Delta(g), Delta(x)
    mu2 = kron(mu, mu) @ rearrange(f, (d, d, d, d), (0, 2, 1, 3))

    def times(u: dict, v: dict) -> dict:
        return mu2.apply({p * d * d + q: f.mul(a, b) for p, a in u.items() for q, b in v.items()})

    dg = {idx(1, 0) * d + idx(1, 0): f.one}
    dx = {idx(0, 0) * d + idx(0, 1): f.one, idx(0, 1) * d + idx(1, 0): f.one}
    cols = []
    for a in range(d):
        i, j = divmod(a, n)
        v = {0: f.one}
        for _ in range(i):
            v = times(v, dg)
        for _ in range(j):
            v = times(v, dx)
        cols.append(v)
    delta = Matrix(f, d * d, d, cols, (d, d), (d,))
    labels = [f"g^{i}x^{j}" for i in range(n) for j in range(n)]
    counit = Matrix.row_vector(f, [1 if a % n == 0 else 0 for a in range(d)])
    return HopfAlgebra(Coalgebra(f, labels, delta, counit), mu, [1] + [0] * (d - 1))


def taft(n: int) -> QBrace:
    """T_n with (g^i x^j) . (g^i' x^j') = zeta^{-i'j} g^i x^j if j' = 0 and 0 otherwise;
    -| is the same with zeta^{i'j}.  The table's scalar is read as a multiple of g^i x^j."""
    h = taft_hopf(n)
    f = h.field
    xi = f.zeta()
    d = n * n
    dot, dpu = {}, {}
    for a in range(d):
        i, j = divmod(a, n)
        for b in range(d):
            i2, j2 = divmod(b, n)
            if j2 == 0:
                dot[(a, a * d + b)] = f.pow(xi, (-i2 * j) % n)
                dpu[(a, a * d + b)] = f.pow(xi, (i2 * j) % n)
    return QBrace(h,
                  Matrix.from_entries(f, d, d * d, dot, (d,), (d, d)),
                  Matrix.from_entries(f, d, d * d, dpu, (d,), (d, d)))


# ---------------------------------------------------------------------------
# the dual of k[D_{2m}]


def _half_case(case: int, i: int, j: int) -> bool:
    if case == 1:
        return False
    if case == 2:
        return j == 1
    if case == 3:
        return i % 2 == 1
    if case == 4:
        return (i + j) % 2 == 1
    raise BadParams("dual_dihedral case must be 1..4")


def dual_dihedral(m: int, case: int, field: FieldSpec | None = None) -> QBrace:
    """The four skew-braces on (k[D_{2m}])^* with -| = . supported on d_1, d_{x^m}."""
    f = field or FieldSpec.rationals()
    if f.characteristic == 2:
        raise BadParams("dual_dihedral needs characteristic != 2")
    _half_case(case, 0, 0)
    g = dihedral_group(m)
    h = dual_group_algebra(g, f)
    n = g.order
    one, zm = g.index(g.one), g.index((m, 0))
    half = f.from_fraction(1, 2)
    entries: dict = {}

    def put(r, c, v):
        entries[(r, c)] = f.add(entries[(r, c)], v) if (r, c) in entries else v

    for a, (i, j) in enumerate(g.elements):
        shifted = g.index(((i + m) % (2 * m), j))
        if _half_case(case, i, j):
            # d_a . d_1 = (d_a + d_{x^m a}) / 2 and d_a . d_{x^m} = d_a - d_a . d_1
            for target in (a, shifted):
                put(target, a * n + one, half)
                put(target, a * n + zm, half if target == a else f.neg(half))
        else:
            put(a, a * n + one, f.one)
    dot = Matrix.from_entries(f, n, n * n, entries, (n,), (n, n))
    return QBrace(h, dot, dot)


# ---------------------------------------------------------------------------
# group-like data


def group_conjugation(group: FiniteGroup | str, field: FieldSpec | None = None) -> QBrace:
    """k[G] with s(g (x) h) = g h g^-1 (x) g, i.e. ^g h = g h g^-1 and g^h = g."""
    g = parse_group(group) if isinstance(group, str) else group
    h = group_algebra(g, field)
    n = g.order
    entries = {}
    for a, x in enumerate(g.elements):
        for b, y in enumerate(g.elements):
            c = g.index(g.mul(g.mul(x, y), g.inv(x)))
            entries[(c * n + a, a * n + b)] = 1
    s = Matrix.from_entries(h.field, n * n, n * n, entries, (n, n), (n, n))
    return qbrace_from_solution(h, s)


def rack(spec: str, field: FieldSpec | None = None) -> Solution:
    """``conjugation:G`` (x <| y = y^-1 x y), ``cyclic:n`` (x <| y = x + 1) or
    ``trivial:n`` (x <| y = x), linearized on a group-like basis."""
    f = field or FieldSpec.rationals()
    kind, _, arg = spec.partition(":")
    if kind == "conjugation":
        g = parse_group(arg)
        elems, labels = g.elements, g.labels
        op = lambda x, y: g.mul(g.mul(g.inv(y), x), y)  # noqa: E731
    elif kind in ("cyclic", "trivial"):
        try:
            n = int(arg)
        except ValueError:
            raise BadParams(f"bad rack size {arg!r}") from None
        elems, labels = tuple(range(n)), tuple(f"e{i}" for i in range(n))
        op = (lambda x, y: (x + 1) % n) if kind == "cyclic" else (lambda x, y: x)
    else:
        raise BadParams(f"unknown rack {spec!r}")
    n = len(elems)
    coalg = Coalgebra.grouplike(f, labels)
    tri = Matrix.from_entries(
        f, n, n * n,
        {(elems.index(op(x, y)), a * n + b): 1 for a, x in enumerate(elems) for b, y in enumerate(elems)},
        (n,), (n, n))
    return rack_to_solution(coalg, tri)


def flip(dim: int, field: FieldSpec | None = None) -> Solution:
    f = field or FieldSpec.rationals()
    if dim < 1:
        raise BadParams("flip needs dim >= 1")
    coalg = Coalgebra.grouplike(f, [f"e{i}" for i in range(dim)])
    return Solution(coalg, flip_matrix(f, dim))


def trivial_qbrace(h: HopfAlgebra) -> QBrace:
    """x . y = x -| y = eps(y) x, whose solution is the flip."""
    op = kron(h.identity, h.counit).with_dims((h.dim,), (h.dim, h.dim))
    return QBrace(h, op, op)


# ---------------------------------------------------------------------------
# name parsing

ZOO_NAMES = ("taft", "dual_dihedral", "group_conjugation", "rack", "flip", "trivial_qbrace",
             "group_algebra", "dual_group_algebra")


def _hopf_from_text(text: str) -> HopfAlgebra:
    text = text.strip()
    obj = build(text) if "(" in text else group_algebra(parse_group(text))
    if isinstance(obj, QBrace):
        return obj.hopf
    if isinstance(obj, HopfAlgebra):
        return obj
    raise BadParams(f"{text!r} is not a Hopf algebra")


def build(name: str, field: FieldSpec | None = None):
    """Build a zoo object from text such as ``taft(3)`` or ``dual_dihedral(2,4)``."""
    m = re.fullmatch(r"\s*(\w+)\s*(?:\((.*)\))?\s*", name)
    if not m:
        raise UnknownExample(name)
    kind, args = m.group(1), (m.group(2) or "").strip()
    parts: Sequence[str] = [a.strip() for a in args.split(",")] if args else []

    def ints(k: int) -> list[int]:
        if len(parts) != k:
            raise BadParams(f"{kind} takes {k} argument(s)")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise BadParams(f"{kind} expects integers") from None

    if kind == "taft":
        return taft(*ints(1))
    if kind == "dual_dihedral":
        return dual_dihedral(*ints(2), field=field)
    if kind == "group_conjugation":
        return group_conjugation(args, field)
    if kind == "group_algebra":
        return group_algebra(parse_group(args), field)
    if kind == "dual_group_algebra":
        return dual_group_algebra(parse_group(args), field)
    if kind == "rack":
        return rack(args, field)
    if kind == "flip":
        return flip(*ints(1), field=field)
    if kind == "trivial_qbrace":
        return trivial_qbrace(_hopf_from_text(args))
    raise UnknownExample(name)
