"""The strong-regularity ladder of a q-magma coalgebra.

Rung 0 is ``p_0 = .``, ``d_0 = -|`` with their exponent and subscript maps
``gp_0 = x^y`` and ``gd_0 = x_y``.  Each further rung is the unique map
making one of the inverse-pair identities hold; concretely it is
(X (x) eps) applied to the inverse of an operator built from the previous
rung.  Writing A(f)(x (x) y) = f(x, y(1)) (x) y(2) and
C(f)(x (x) y) = f(x, y(2)) (x) y(1):

    gp_{i+1} = ext C(p_i)      p_{i+1} = ext A(gp_{i+1})
    d_{i+1}  = ext A(gd_i)     gd_{i+1} = ext C(d_{i+1})
    p_{i-1}  = ext C(gp_i)     gp_{i-1} = ext A(p_{i-1})
    gd_{i-1} = ext A(d_i)      d_{i-1}  = ext C(gd_{i-1})
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braiding import QMagma, Solution, extract
from .coalgebra import Coalgebra, cop, is_coalgebra_map, tensor_coalgebra
from .linalg import Matrix, Singular
from .report import Report
from .tensor import Fn, compare_terms, tensor, term_matrix, vars_

__all__ = [
    "LadderObstruction",
    "RegularityLadder",
    "VeryStrongRegularity",
    "regularity_ladder",
    "very_strong_regularity",
]


@dataclass(frozen=True)
class LadderObstruction:
    """A rung could not be solved: the operator was singular or an identity failed."""

    index: int
    which: str
    rank: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass
class RegularityLadder:
    coalg: Coalgebra
    lo: int
    hi: int
    p: dict[int, Matrix] = field(default_factory=dict)
    d: dict[int, Matrix] = field(default_factory=dict)
    gp: dict[int, Matrix] = field(default_factory=dict)
    gd: dict[int, Matrix] = field(default_factory=dict)
    report: Report | None = None

    def rung(self, i: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        if not self.lo <= i <= self.hi:
            raise IndexError(f"rung {i} outside [{self.lo}, {self.hi}]")
        return self.p[i], self.d[i], self.gp[i], self.gd[i]

    @property
    def indices(self) -> range:
        return range(self.lo, self.hi + 1)


def _ops(coalg: Coalgebra):
    x, y = vars_("x y")
    vs = [(x, coalg.delta), (y, coalg.delta)]

    def lead(f: Matrix) -> Matrix:
        return term_matrix(tensor(Fn(f)(x, y[1]), y[2]), vs)

    def trail(f: Matrix) -> Matrix:
        return term_matrix(tensor(Fn(f)(x, y[2]), y[1]), vs)

    return lead, trail


def regularity_ladder(q: QMagma, lo: int = -2, hi: int = 2) -> RegularityLadder | LadderObstruction:
    """Solve rungs ``lo..hi`` (lo <= 0 <= hi) and verify every identity."""
    if lo > 0 or hi < 0:
        raise ValueError("the range must contain 0")
    c, n = q.coalg, q.dim
    lead, trail = _ops(c)
    lad = RegularityLadder(c, lo, hi)

    def ext(op: Matrix, i: int, which: str) -> Matrix:
        m = extract(op, n, c.counit)
        if isinstance(m, Singular):
            raise _Stop(LadderObstruction(i, which, m.rank))
        return m

    try:
        lad.p[0], lad.d[0] = q.p, q.d
        lad.gp[0] = ext(lead(q.p), 0, "gp")
        lad.gd[0] = ext(trail(q.d), 0, "gd")
        for i in range(0, hi):
            lad.gp[i + 1] = ext(trail(lad.p[i]), i + 1, "gp")
            lad.p[i + 1] = ext(lead(lad.gp[i + 1]), i + 1, "p")
            lad.d[i + 1] = ext(lead(lad.gd[i]), i + 1, "d")
            lad.gd[i + 1] = ext(trail(lad.d[i + 1]), i + 1, "gd")
        for i in range(0, lo, -1):
            lad.p[i - 1] = ext(trail(lad.gp[i]), i - 1, "p")
            lad.gp[i - 1] = ext(lead(lad.p[i - 1]), i - 1, "gp")
            lad.gd[i - 1] = ext(lead(lad.d[i]), i - 1, "gd")
            lad.d[i - 1] = ext(trail(lad.gd[i - 1]), i - 1, "d")
    except _Stop as stop:
        return stop.verdict

    rep = verify_ladder(lad)
    lad.report = rep
    bad = rep.failures()
    if bad:
        first = bad[0]
        idx = int(first.name.split("[")[1].split("]")[0])
        return LadderObstruction(idx, first.name, None, first.detail)
    return lad


class _Stop(Exception):
    def __init__(self, verdict: LadderObstruction):
        self.verdict = verdict


def verify_ladder(lad: RegularityLadder) -> Report:
    """The four identity families and the coalgebra-map property of every rung."""
    c = lad.coalg
    rep = Report(f"ladder [{lad.lo}, {lad.hi}]")
    x, y = vars_("x y")
    vs = [(x, c.delta), (y, c.delta)]
    e = tensor(x, Fn(c.counit)(y))
    xx = tensor_coalgebra(c, c)
    xc = tensor_coalgebra(c, cop(c))
    for i in lad.indices:
        p, d, gp, gd = (Fn(m) for m in lad.rung(i))
        rep.check(f"gp_p[{i}].a", compare_terms(gp(p(x, y[1]), y[2]), e, vs))
        rep.check(f"gp_p[{i}].b", compare_terms(p(gp(x, y[1]), y[2]), e, vs))
        rep.check(f"gd_d[{i}].a", compare_terms(gd(d(x, y[2]), y[1]), e, vs))
        rep.check(f"gd_d[{i}].b", compare_terms(d(gd(x, y[2]), y[1]), e, vs))
        if i > lad.lo:
            pm, gdm = Fn(lad.p[i - 1]), Fn(lad.gd[i - 1])
            rep.check(f"gp_prev[{i}].a", compare_terms(pm(gp(x, y[2]), y[1]), e, vs))
            rep.check(f"gp_prev[{i}].b", compare_terms(gp(pm(x, y[2]), y[1]), e, vs))
            rep.check(f"d_prev[{i}].a", compare_terms(d(gdm(x, y[1]), y[2]), e, vs))
            rep.check(f"d_prev[{i}].b", compare_terms(gdm(d(x, y[1]), y[2]), e, vs))
        is_coalgebra_map(lad.p[i], xc, c, rep, f"p[{i}]")
        is_coalgebra_map(lad.d[i], xc, c, rep, f"d[{i}]")
        is_coalgebra_map(lad.gp[i], xx, c, rep, f"gp[{i}]")
        is_coalgebra_map(lad.gd[i], xx, c, rep, f"gd[{i}]")
    return rep


@dataclass
class VeryStrongRegularity:
    """The ladder of X and that of X^ = X_{(s~_tau)^-1} on X^cop.

    On X^ the rungs are named diamond_i (= p_i), bdiamond_i (= d_i) and the
    left exponent / subscript maps (= gp_i, gd_i).
    """

    ladder: RegularityLadder
    hat: RegularityLadder
    hat_qmagma: QMagma

    def diamond(self, i: int) -> Matrix:
        return self.hat.p[i]

    def bdiamond(self, i: int) -> Matrix:
        return self.hat.d[i]

    def hat_up(self, i: int) -> Matrix:
        return self.hat.gp[i]

    def hat_down(self, i: int) -> Matrix:
        return self.hat.gd[i]


def very_strong_regularity(q: QMagma, lo: int = -2, hi: int = 2) -> VeryStrongRegularity | LadderObstruction:
    lad = regularity_ladder(q, lo, hi)
    if isinstance(lad, LadderObstruction):
        return lad
    sol = q.solution()
    st = sol.tilde_tau()
    inv = st.inverse()
    if inv is None:
        return LadderObstruction(0, "s_not_invertible")
    if not inv.left_nondegenerate:
        g = inv.G_inverse
        return LadderObstruction(0, "hat_not_left_nondegenerate", g.rank)
    hq = inv.qmagma()
    hat = regularity_ladder(hq, lo, hi)
    if isinstance(hat, LadderObstruction):
        return LadderObstruction(hat.index, "hat." + hat.which, hat.rank, hat.detail)
    return VeryStrongRegularity(lad, hat, hq)


def hat_solution(q: QMagma) -> Solution:
    """(s~_tau)^-1 on X^cop."""
    inv = q.solution().tilde_tau().inverse()
    if inv is None:
        raise ValueError("s is not invertible")
    return inv
