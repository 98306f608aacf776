"""Multilinear maps acting on individual tensor slots, and Sweedler terms.

A tensor in V_1 (x) ... (x) V_n is a dict ``{(i_1, ..., i_n): raw}``.  A
:class:`Program` is a sequence of steps, each applying a matrix to a run of
consecutive slots or permuting slots.  Sweedler expressions such as
``y(1) -| x(2)  (x)  x(1) . y(2)`` are written with :class:`Var` and
:class:`Fn` and compiled to programs: the variables are expanded with the
iterated comultiplication, the legs are moved into the order in which they
appear in the expression, and the operations are applied innermost first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterator, Sequence

from .field import FieldSpec
from .linalg import DimensionMismatch, Matrix

__all__ = [
    "Fn",
    "Program",
    "Term",
    "Var",
    "Witness",
    "compile_term",
    "compare_terms",
    "rearrange",
    "term_matrix",
    "tensor",
]


def _decode(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def _encode(key: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for k, d in zip(key, dims):
        idx = idx * d + k
    return idx


def _decoded_columns(m: Matrix) -> list[list[tuple[tuple[int, ...], object]]]:
    dec = m._decoded
    if dec is None:
        rd = m.rdims
        dec = [[(_decode(i, rd), v) for i, v in col.items()] for col in m.cols]
        m._decoded = dec
    return dec


class Program:
    """Slotwise evaluation of a composite multilinear map."""

    def __init__(self, field: FieldSpec, in_dims: Sequence[int]):
        self.field = field
        self.in_dims = tuple(in_dims)
        self.dims = list(in_dims)
        self.steps: list[tuple] = []

    @property
    def out_dims(self) -> tuple[int, ...]:
        return tuple(self.dims)

    def apply(self, op: Matrix, pos: int) -> "Program":
        k = len(op.cdims)
        if tuple(self.dims[pos:pos + k]) != op.cdims:
            raise DimensionMismatch(
                f"operator expects {op.cdims} at slot {pos}, found {tuple(self.dims[pos:pos + k])}"
            )
        if op.field is not self.field:
            raise DimensionMismatch("operator over a different field")
        self.steps.append(("op", op, pos, k))
        self.dims[pos:pos + k] = list(op.rdims)
        return self

    def permute(self, perm: Sequence[int]) -> "Program":
        """New slot k is old slot ``perm[k]``."""
        perm = tuple(perm)
        if sorted(perm) != list(range(len(self.dims))):
            raise ValueError(f"bad permutation {perm}")
        if perm != tuple(range(len(perm))):
            self.steps.append(("perm", perm))
            self.dims = [self.dims[i] for i in perm]
        return self

    def then(self, other: "Program") -> "Program":
        if tuple(other.in_dims) != tuple(self.dims):
            raise DimensionMismatch("programs do not compose")
        self.steps.extend(other.steps)
        self.dims = list(other.dims)
        return self

    def run(self, vec: dict) -> dict:
        f = self.field
        add, mul, iz = f.add, f.mul, f.is_zero
        for step in self.steps:
            if step[0] == "perm":
                perm = step[1]
                vec = {tuple(key[i] for i in perm): c for key, c in vec.items()}
                continue
            _, op, pos, k = step
            dec = _decoded_columns(op)
            cd = op.cdims
            out: dict = {}
            end = pos + k
            for key, c in vec.items():
                if k == 1:
                    flat = key[pos]
                elif k == 0:
                    flat = 0
                elif k == 2:
                    flat = key[pos] * cd[1] + key[pos + 1]
                else:
                    flat = _encode(key[pos:end], cd)
                head, tail = key[:pos], key[end:]
                for sub, v in dec[flat]:
                    nk = head + sub + tail
                    w = mul(c, v)
                    if nk in out:
                        out[nk] = add(out[nk], w)
                    else:
                        out[nk] = w
            vec = {key: v for key, v in out.items() if not iz(v)}
            if not vec:
                return vec
        return vec

    def on_basis(self, key: tuple[int, ...]) -> dict:
        return self.run({key: self.field.one})

    def matrix(self) -> Matrix:
        """The composite as a matrix (columns indexed by input basis)."""
        cols = []
        for key in product(*(range(d) for d in self.in_dims)):
            res = self.on_basis(key)
            cols.append({_encode(k, self.dims): v for k, v in res.items()})
        return Matrix(
            self.field, prod(self.dims), prod(self.in_dims), cols,
            tuple(self.dims), self.in_dims, clean=False,
        )


def rearrange(field: FieldSpec, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Permutation matrix sending slot ``perm[k]`` of the input to slot k."""
    return Program(field, dims).permute(perm).matrix()


# ---------------------------------------------------------------------------
# Sweedler terms


class Term:
    """An expression whose value lies in a tensor product of spaces."""

    def leaves(self) -> Iterator["Leaf"]:
        raise NotImplementedError


class Leaf(Term):
    __slots__ = ("var", "comp")

    def __init__(self, var: "Var", comp: int):
        self.var = var
        self.comp = comp

    def leaves(self):
        yield self

    def __repr__(self) -> str:
        return f"{self.var.name}({self.comp})" if self.comp else self.var.name


class Var(Leaf):
    """A variable; ``x[i]`` is its i-th Sweedler leg, ``x`` the whole element."""

    def __init__(self, name: str):
        super().__init__(self, 0)
        self.name = name

    def __getitem__(self, i: int) -> Leaf:
        if i < 1:
            raise ValueError("Sweedler legs are numbered from 1")
        return Leaf(self, i)

    def __repr__(self) -> str:
        return self.name

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


def vars_(names: str) -> tuple[Var, ...]:
    return tuple(Var(n) for n in names.split())


class Node(Term):
    __slots__ = ("op", "children")

    def __init__(self, op: Matrix, children: Sequence[Term]):
        self.op = op
        self.children = tuple(children)

    def leaves(self):
        for c in self.children:
            yield from c.leaves()


class Tensor(Term):
    __slots__ = ("children",)

    def __init__(self, children: Sequence[Term]):
        self.children = tuple(children)

    def leaves(self):
        for c in self.children:
            yield from c.leaves()


def tensor(*terms: Term) -> Tensor:
    return Tensor(terms)


class Fn:
    """Wrap a matrix so it can be applied to terms: ``dot(x[1], y[2])``."""

    __slots__ = ("op", "name")

    def __init__(self, op: Matrix, name: str = "f"):
        self.op = op
        self.name = name

    def __call__(self, *args: Term) -> Node:
        return Node(self.op, args)

    def __repr__(self) -> str:
        return f"Fn({self.name})"


def _emit(term: Term, prog: Program, pos: int) -> int:
    """Append the steps evaluating ``term`` whose leaves start at ``pos``."""
    if isinstance(term, Leaf):
        return 1
    if isinstance(term, Tensor):
        width = 0
        for c in term.children:
            width += _emit(c, prog, pos + width)
        return width
    if isinstance(term, Node):
        width = 0
        for c in term.children:
            width += _emit(c, prog, pos + width)
        if width != len(term.op.cdims):
            raise DimensionMismatch(
                f"operator of arity {len(term.op.cdims)} applied to {width} slots"
            )
        prog.apply(term.op, pos)
        return len(term.op.rdims)
    raise TypeError(f"not a term: {term!r}")


def compile_term(term: Term, variables: Sequence[tuple[Var, Matrix]]) -> Program:
    """Compile ``term`` as a map out of the tensor product of the variables.

    ``variables`` lists ``(var, delta)`` pairs in input order, ``delta`` the
    comultiplication used for that variable's Sweedler legs.  Every leg
    1..n of a variable must occur exactly once (or the bare variable once).
    """
    leaves = list(term.leaves())
    if not variables:
        raise ValueError("a term needs at least one variable")
    field = variables[0][1].field
    legs: dict[Var, list[int]] = {v: [] for v, _ in variables}
    for lf in leaves:
        if lf.var not in legs:
            raise ValueError(f"unbound variable {lf.var}")
        legs[lf.var].append(lf.comp)
    in_dims = [delta.ncols for _, delta in variables]
    prog = Program(field, in_dims)
    order: list[tuple[Var, int]] = []
    pos = 0
    for v, delta in variables:
        comps = sorted(legs[v])
        if comps == [0]:
            order.append((v, 0))
            pos += 1
            continue
        n = len(comps)
        if comps != list(range(1, n + 1)):
            raise ValueError(f"legs of {v} must be 1..n once each, got {legs[v]}")
        for _ in range(n - 1):
            prog.apply(delta, pos)
        order.extend((v, i) for i in range(1, n + 1))
        pos += n
    where = {key: i for i, key in enumerate(order)}
    prog.permute([where[(lf.var, lf.comp)] for lf in leaves])
    _emit(term, prog, 0)
    return prog


def term_matrix(term: Term, variables: Sequence[tuple[Var, Matrix]]) -> Matrix:
    return compile_term(term, variables).matrix()


@dataclass
class Witness:
    """First input basis tuple on which two sides of an identity differ."""

    inputs: tuple[int, ...]
    lhs: dict
    rhs: dict
    field: FieldSpec

    def describe(self, labels: Sequence[Sequence[str]] | None = None) -> str:
        def fmt(vec: dict) -> str:
            if not vec:
                return "0"
            parts = []
            for key, v in sorted(vec.items()):
                name = "(x)".join(str(k) for k in key) if key else "1"
                parts.append(f"{self.field.format(v)}*[{name}]")
            return " + ".join(parts)

        ins = self.inputs
        if labels is not None:
            ins = tuple(labels[i][k] for i, k in enumerate(self.inputs))
        return f"at {ins}: lhs={fmt(self.lhs)} rhs={fmt(self.rhs)}"


def compare_programs(lhs: Program, rhs: Program) -> Witness | None:
    if lhs.in_dims != rhs.in_dims:
        raise DimensionMismatch("sides have different inputs")
    if lhs.out_dims != rhs.out_dims:
        raise DimensionMismatch(f"sides land in {lhs.out_dims} vs {rhs.out_dims}")
    for key in product(*(range(d) for d in lhs.in_dims)):
        a = lhs.on_basis(key)
        b = rhs.on_basis(key)
        if a != b:
            return Witness(key, a, b, lhs.field)
    return None


def compare_terms(lhs: Term, rhs: Term, variables: Sequence[tuple[Var, Matrix]]) -> Witness | None:
    """None when the identity lhs = rhs holds on every basis input."""
    return compare_programs(compile_term(lhs, variables), compile_term(rhs, variables))


def compare_matrices(a: Matrix, b: Matrix) -> Witness | None:
    """Matrix equality reported as a :class:`Witness` on the first bad column."""
    diff = a.first_difference(b)
    if diff is None:
        return None
    _, j = diff
    key = _decode(j, a.cdims)
    rd = a.rdims
    lhs = {_decode(i, rd): v for i, v in a.cols[j].items()}
    rhs = {_decode(i, rd): v for i, v in b.cols[j].items()}
    return Witness(key, lhs, rhs, a.field)
