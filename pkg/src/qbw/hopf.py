"""Bialgebras and Hopf algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coalgebra import Coalgebra, cop, flip, is_coalgebra_map, validate_coalgebra
from .field import FieldSpec
from .linalg import DimensionMismatch, Matrix, Singular, Vector, invert, kron, nullspace, solve
from .report import Report
from .tensor import Fn, Var, compare_matrices, compare_terms, rearrange, tensor

__all__ = [
    "AntipodeNotBijective",
    "HopfAlgebra",
    "NoAntipode",
    "NotInvertible",
    "compute_antipode",
    "convolution",
    "convolution_inverse",
    "hopf_cop",
    "hopf_op",
    "is_module_coalgebra",
    "validate_bialgebra",
]


class AntipodeNotBijective(ValueError):
    pass


@dataclass(frozen=True)
class NoAntipode:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotInvertible:
    reason: str

    def __bool__(self) -> bool:
        return False


class HopfAlgebra:
    """A bialgebra (coalgebra with mu, unit) and, once computed, its antipode.

    The antipode is always computed by :func:`compute_antipode`; a supplied
    ``antipode`` is only cross-checked against it.
    """

    def __init__(self, coalg: Coalgebra, mu: Matrix, unit: Vector | Sequence, antipode: Matrix | None = None,
                 *, require_antipode: bool = True):
        d = coalg.dim
        f = coalg.field
        if mu.shape != (d, d * d):
            raise DimensionMismatch("multiplication must be dim x dim^2")
        self.coalg = coalg
        self.field = f
        self.dim = d
        self.labels = coalg.labels
        self.mu = mu.with_dims((d,), (d, d))
        if not isinstance(unit, Vector):
            unit = Vector.from_list(f, unit)
        self.unit = unit
        self.eta = Matrix.column_vector(unit, (d,))
        self.antipode: Matrix | None = None
        self.antipode_inverse: Matrix | None = None
        if require_antipode:
            s = compute_antipode(self)
            if isinstance(s, NoAntipode):
                raise ValueError(f"no antipode: {s.reason}")
            if antipode is not None and antipode.with_dims((d,), (d,)) != s:
                raise ValueError("supplied antipode differs from the computed one")
            self._set_antipode(s)

    def _set_antipode(self, s: Matrix) -> None:
        self.antipode = s
        inv = invert(s)
        self.antipode_inverse = None if isinstance(inv, Singular) else inv

    @property
    def delta(self) -> Matrix:
        return self.coalg.delta

    @property
    def counit(self) -> Matrix:
        return self.coalg.counit

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    @property
    def bijective_antipode(self) -> bool:
        return self.antipode_inverse is not None

    def S(self, k: int = 1) -> Matrix:
        """S^k for any integer k (negative powers need a bijective antipode)."""
        if self.antipode is None:
            raise ValueError("antipode not computed")
        if k >= 0:
            return self.antipode.power(k)
        if self.antipode_inverse is None:
            raise AntipodeNotBijective("S is not invertible")
        return self.antipode_inverse.power(-k)

    def unit_counit(self) -> Matrix:
        """eta o eps."""
        return (self.eta @ self.counit).with_dims((self.dim,), (self.dim,))

    def mul(self, a: Vector, b: Vector) -> Vector:
        return self.mu(kron(Matrix.column_vector(a), Matrix.column_vector(b)).column(0))

    def element(self, label: str) -> Vector:
        return self.coalg.basis(self.coalg.index(label))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HopfAlgebra)
            and self.coalg == other.coalg
            and self.mu == other.mu
            and self.unit == other.unit
        )

    def __repr__(self) -> str:
        return f"HopfAlgebra(dim={self.dim}, {self.field})"


def validate_bialgebra(h: HopfAlgebra) -> Report:
    rep = Report(f"bialgebra dim {h.dim}")
    rep.extend(validate_coalgebra(h.coalg), "coalgebra.")
    f, d = h.field, h.dim
    ident = h.identity
    mu = h.mu
    rep.check("associativity", compare_matrices(mu @ kron(mu, ident), mu @ kron(ident, mu)))
    rep.check("unit_left", compare_matrices((mu @ kron(h.eta, ident)).with_dims((d,), (d,)), ident))
    rep.check("unit_right", compare_matrices((mu @ kron(ident, h.eta)).with_dims((d,), (d,)), ident))
    mid = rearrange(f, (d, d, d, d), (0, 2, 1, 3))
    rep.check("delta_multiplicative", compare_matrices(h.delta @ mu, kron(mu, mu) @ mid @ kron(h.delta, h.delta)))
    rep.check("delta_unit", compare_matrices(h.delta @ h.eta, kron(h.eta, h.eta)))
    rep.check("counit_multiplicative", compare_matrices(h.counit @ mu, kron(h.counit, h.counit)))
    rep.check("counit_unit", compare_matrices(h.counit @ h.eta, Matrix.identity(f, 1, ())))
    return rep


def validate_hopf(h: HopfAlgebra) -> Report:
    """Bialgebra axioms, antipode identities and the antipode's anti-properties."""
    rep = validate_bialgebra(h)
    s = h.antipode
    if s is None:
        rep.check("antipode_exists", False, "no antipode")
        return rep
    d = h.dim
    e = h.unit_counit()
    rep.check("antipode_left", compare_matrices(h.mu @ kron(s, h.identity) @ h.delta, e))
    rep.check("antipode_right", compare_matrices(h.mu @ kron(h.identity, s) @ h.delta, e))
    tau = flip(h.field, d)
    rep.check("antipode_antimultiplicative", compare_matrices(s @ h.mu, h.mu @ kron(s, s) @ tau))
    rep.check("antipode_anticomultiplicative", compare_matrices(h.delta @ s, tau @ kron(s, s) @ h.delta))
    rep.data["antipode_bijective"] = h.bijective_antipode
    return rep


def _convolution_system(f: Matrix, delta: Matrix, mu: Matrix, side: str) -> Matrix:
    """Matrix of the linear map g -> f*g (side "left") or g -> g*f in the entries of g.

    Unknown g[r, c] has index r*n + c; equation (o, c0) has index o*n + c0.
    """
    field = f.field
    add, mul = field.add, field.mul
    m, n = mu.nrows, f.ncols
    cache: dict[tuple[int, int], dict] = {}

    def product_with_basis(a: int, r: int) -> dict:
        # mu(f(e_a) (x) e_r) or mu(e_r (x) f(e_a))
        key = (a, r)
        if key not in cache:
            if side == "left":
                vec = {i * m + r: u for i, u in f.cols[a].items()}
            else:
                vec = {r * m + i: u for i, u in f.cols[a].items()}
            cache[key] = mu.apply(vec)
        return cache[key]

    cols: list[dict] = [{} for _ in range(m * n)]
    for c0 in range(n):
        for idx, lam in delta.cols[c0].items():
            c1, c2 = divmod(idx, n)
            fixed, free = (c1, c2) if side == "left" else (c2, c1)
            for r in range(m):
                out = product_with_basis(fixed, r)
                if not out:
                    continue
                col = cols[r * n + free]
                for o, v in out.items():
                    w = mul(lam, v)
                    k = o * n + c0
                    col[k] = add(col[k], w) if k in col else w
    return Matrix(field, m * n, m * n, cols)


def convolution(f: Matrix, g: Matrix, delta: Matrix, mu: Matrix) -> Matrix:
    """(f * g)(h) = mu(f(h(1)) (x) g(h(2))) for the supplied Delta and mu."""
    d = f.ncols
    out = mu @ kron(f, g) @ delta
    return out.with_dims((mu.nrows,), (d,))


def convolution_inverse(f: Matrix, delta: Matrix, mu: Matrix, unit: Matrix, counit: Matrix) -> Matrix | NotInvertible:
    """The two-sided inverse of f in the convolution algebra (Delta, mu).

    Solves f*g = g*f = eta eps as one linear system in the entries of g and
    insists on a unique solution.
    """
    field = f.field
    m, n = mu.nrows, f.ncols
    target = (unit @ counit).with_dims((m,), (n,))
    left = _convolution_system(f, delta, mu, "left")
    right = _convolution_system(f, delta, mu, "right")
    stacked_cols = []
    for a, b in zip(left.cols, right.cols):
        col = dict(a)
        for i, v in b.items():
            col[m * n + i] = v
        stacked_cols.append(col)
    system = Matrix(field, 2 * m * n, m * n, stacked_cols, clean=False)
    rhs_col: dict = {}
    for c0, col in enumerate(target.cols):
        for o, v in col.items():
            rhs_col[o * n + c0] = v
            rhs_col[m * n + o * n + c0] = v
    rhs = Matrix(field, 2 * m * n, 1, [rhs_col], clean=False)
    sol = solve(system, rhs)
    if sol is None:
        return NotInvertible("convolution system is inconsistent")
    if nullspace(system):
        return NotInvertible("convolution inverse is not unique")
    cols: list[dict] = [{} for _ in range(n)]
    for idx, v in sol.cols[0].items():
        r, c = divmod(idx, n)
        cols[c][r] = v
    g = Matrix(field, m, n, cols, (m,), (n,), clean=False)
    if compare_matrices(convolution(f, g, delta, mu), target) or compare_matrices(convolution(g, f, delta, mu), target):
        raise ArithmeticError("solved convolution inverse does not verify")
    return g


def compute_antipode(h: HopfAlgebra) -> Matrix | NoAntipode:
    """Antipode as the convolution inverse of the identity."""
    g = convolution_inverse(h.identity, h.delta, h.mu, h.eta, h.counit)
    if isinstance(g, NotInvertible):
        return NoAntipode(g.reason)
    return g.with_dims((h.dim,), (h.dim,))


def hopf_op(h: HopfAlgebra) -> HopfAlgebra:
    """Opposite multiplication; antipode S^-1."""
    if not h.bijective_antipode:
        raise AntipodeNotBijective("H^op needs a bijective antipode")
    mu = h.mu @ flip(h.field, h.dim)
    out = HopfAlgebra(h.coalg, mu, h.unit, require_antipode=False)
    out._set_antipode(h.antipode_inverse)
    _confirm_antipode(out)
    return out


def hopf_cop(h: HopfAlgebra) -> HopfAlgebra:
    """Opposite comultiplication; antipode S^-1."""
    if not h.bijective_antipode:
        raise AntipodeNotBijective("H^cop needs a bijective antipode")
    out = HopfAlgebra(cop(h.coalg), h.mu, h.unit, require_antipode=False)
    out._set_antipode(h.antipode_inverse)
    _confirm_antipode(out)
    return out


def _confirm_antipode(h: HopfAlgebra) -> None:
    computed = compute_antipode(h)
    if isinstance(computed, NoAntipode) or computed != h.antipode:
        raise ArithmeticError("antipode of the opposite structure does not verify")


def is_module_coalgebra(action: Matrix, x: Coalgebra, h: HopfAlgebra, variance: str = "op",
                        cop_source: bool = True, name: str = "module") -> Report:
    """Right module coalgebra checks for ``x . h`` given as a dim_X x (dim_X dim_H) matrix.

    ``variance`` is ``"op"`` for a right H^op-module ((x.h).k = x.(kh)) or
    ``"plain"`` for a right H-module ((x.h).k = x.(hk)).  With
    ``cop_source`` the action must be a coalgebra map X (x) H^cop -> X,
    otherwise X (x) H -> X.
    """
    rep = Report(name)
    act = Fn(action.with_dims((x.dim,), (x.dim, h.dim)), "act")
    mu = Fn(h.mu, "mu")
    a, b, c = Var("x"), Var("h"), Var("k")
    vs = [(a, x.delta), (b, h.delta), (c, h.delta)]
    inner = mu(c, b) if variance == "op" else mu(b, c)
    rep.check("action", compare_terms(act(act(a, b), c), act(a, inner), vs))
    one = Fn(h.eta, "1")
    rep.check("unit", compare_terms(act(a, one()), a, vs[:1]))
    hdelta = flip(h.field, h.dim) @ h.delta if cop_source else h.delta
    eps_x, eps_h = Fn(x.counit, "eps"), Fn(h.counit, "eps")
    lhs = Fn(x.delta, "delta")(act(a, b))
    rhs = tensor(act(a[1], b[1]), act(a[2], b[2]))
    rep.check("comultiplicative", compare_terms(lhs, rhs, [(a, x.delta), (b, hdelta)]))
    rep.check("counital", compare_terms(eps_x(act(a, b)), tensor(eps_x(a), eps_h(b)), [(a, x.delta), (b, hdelta)]))
    return rep
