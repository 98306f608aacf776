"""The shift coalgebra Y = X^(Z), restricted to blocks -m..m.

Block j is a copy of X; it carries Delta for even j and Delta^cop for odd j,
and S moves block j to block j+1.  Products of x in block a with y in block
b land in block a and are read off the ladders of X and of its hat, with the
rung determined by the parity of a and the offset b - a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braiding import QMagma
from .coalgebra import Coalgebra, cop, is_coalgebra_map, tensor_coalgebra, validate_coalgebra
from .ladder import LadderObstruction, VeryStrongRegularity, very_strong_regularity
from .linalg import Matrix, kron
from .qbrace import QBrace
from .report import Report
from .tensor import Fn, compare_terms, tensor, vars_

__all__ = ["ShiftCoalgebra", "WindowUnderflow", "shift_coalgebra"]


class WindowUnderflow(IndexError):
    """A table entry needs a ladder rung, or a block, outside the window."""


@dataclass
class ShiftCoalgebra:
    base: QMagma
    radius: int
    ladders: VeryStrongRegularity
    coalg: Coalgebra
    dot: Matrix
    dpu: Matrix
    up: Matrix
    down: Matrix
    report: Report

    @property
    def blocks(self) -> range:
        return range(-self.radius, self.radius + 1)

    def embed(self, j: int) -> Matrix:
        """i_j : X -> Y."""
        if abs(j) > self.radius:
            raise WindowUnderflow(f"block {j} outside [-{self.radius}, {self.radius}]")
        n = self.base.dim
        off = (j + self.radius) * n
        return Matrix(self.base.field, self.coalg.dim, n, [{off + a: self.base.field.one} for a in range(n)])


def _rungs(v: VeryStrongRegularity):
    lad, hat = v.ladder, v.hat

    def get(family: str, i: int) -> Matrix:
        table = {"p": lad.p, "d": lad.d, "gp": lad.gp, "gd": lad.gd,
                 "hp": hat.p, "hd": hat.d, "hgp": hat.gp, "hgd": hat.gd}[family]
        if i not in table:
            raise WindowUnderflow(f"rung {family}[{i}] outside [{lad.lo}, {lad.hi}]")
        return table[i]

    return get


def _entry(op: str, a: int, b: int, get) -> Matrix:
    """The X-level map giving S^a(x) op S^b(y) = S^a(f(x, y)).

    On odd blocks the hat rungs enter with the hat's first operation as the
    box product and its second as the diamond product.
    """
    k, even = b - a, a % 2 == 0
    if op == "dot":
        if k % 2 == 0:
            return get("p" if even else "hp", k // 2)
        return get("gp" if even else "hgp", (k + 1) // 2)
    if op == "dpu":
        if k % 2 == 0:
            return get("d" if even else "hd", k // 2)
        return get("gd" if even else "hgd", (k - 1) // 2)
    if op == "up":
        if k % 2 == 0:
            return get("gp" if even else "hgp", k // 2)
        return get("p" if even else "hp", (k + 1) // 2 - 1)
    if k % 2 == 0:
        return get("gd" if even else "hgd", k // 2)
    return get("d" if even else "hd", (k - 1) // 2 + 1)


def _assemble(op: str, radius: int, n: int, field, get) -> Matrix:
    nb = 2 * radius + 1
    big = nb * n
    cols: list[dict] = [{} for _ in range(big * big)]
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            f = _entry(op, a, b, get)
            oa, ob = (a + radius) * n, (b + radius) * n
            for x in range(n):
                for y in range(n):
                    col = f.cols[x * n + y]
                    if col:
                        cols[(oa + x) * big + ob + y] = {oa + r: v for r, v in col.items()}
    return Matrix(field, big, big * big, cols, (big,), (big, big), clean=False)


def _shift_coalgebra_structure(x: Coalgebra, radius: int) -> Coalgebra:
    n = x.dim
    nb = 2 * radius + 1
    big = nb * n
    xc = cop(x)
    cols: list[dict] = []
    labels: list[str] = []
    counit: dict = {}
    for j in range(-radius, radius + 1):
        src = x if j % 2 == 0 else xc
        off = (j + radius) * n
        for a in range(n):
            col = {}
            for idx, v in src.delta.cols[a].items():
                u, w = divmod(idx, n)
                col[(off + u) * big + off + w] = v
            cols.append(col)
            labels.append(f"{x.labels[a]}@{j}")
            e = x.counit.cols[a].get(0)
            if e is not None:
                counit[off + a] = e
    delta = Matrix(x.field, big * big, big, cols, (big, big), (big,), clean=False)
    eps = Matrix(x.field, 1, big, [{0: counit[j]} if j in counit else {} for j in range(big)], (), (big,))
    return Coalgebra(x.field, labels, delta, eps)


def _conditions(v: VeryStrongRegularity, i: int, rep: Report) -> bool:
    """Conditions i-iv at rung i, in Sweedler notation on X."""
    c = v.ladder.coalg
    get = _rungs(v)
    x, y = vars_("x y")
    vs = [(x, c.delta), (y, c.delta)]
    try:
        p, d = Fn(get("p", i)), Fn(get("d", -i))
        gp, gd = Fn(get("gp", i)), Fn(get("gd", -i))
        # hat rungs: box_i = p^, diamond_i = d^, x_(y_i) = gp^, x^(y_i) = gd^
        box, diamond = Fn(get("hp", i)), Fn(get("hd", -i))
        lower, upper = Fn(get("hgp", i)), Fn(get("hgd", -i))
    except WindowUnderflow as exc:
        for name in ("i", "ii", "iii", "iv"):
            rep.untested(f"cond_{name}[{i}]", str(exc))
        return True
    ok = rep.check(f"cond_i[{i}]", compare_terms(
        tensor(d(y[1], x[2]), p(x[1], y[2])), tensor(d(y[2], x[1]), p(x[2], y[1])), vs))
    ok &= rep.check(f"cond_ii[{i}]", compare_terms(
        tensor(upper(y[2], x[2]), gp(x[1], y[1])), tensor(upper(y[1], x[1]), gp(x[2], y[2])), vs))
    ok &= rep.check(f"cond_iii[{i}]", compare_terms(
        tensor(diamond(y[1], x[2]), box(x[1], y[2])), tensor(diamond(y[2], x[1]), box(x[2], y[1])), vs))
    ok &= rep.check(f"cond_iv[{i}]", compare_terms(
        tensor(gd(y[1], x[1]), lower(x[2], y[2])), tensor(gd(y[2], x[2]), lower(x[1], y[1])), vs))
    return ok


def shift_coalgebra(x: QMagma | QBrace, radius: int = 2,
                    ladder_range: tuple[int, int] | None = None) -> ShiftCoalgebra:
    q = x.qmagma if isinstance(x, QBrace) else x
    if radius < 0:
        raise ValueError("window radius must be >= 0")
    lo, hi = ladder_range if ladder_range is not None else (-radius, radius)
    v = very_strong_regularity(q, lo, hi)
    if isinstance(v, LadderObstruction):
        raise ValueError(f"not very strongly regular: {v}")
    get = _rungs(v)
    n, f = q.dim, q.field
    rep = Report(f"shift window [-{radius}, {radius}]")
    Y = _shift_coalgebra_structure(q.coalg, radius)
    rep.extend(validate_coalgebra(Y), "coalgebra.")
    ops = {op: _assemble(op, radius, n, f, get) for op in ("dot", "dpu", "up", "down")}
    sc = ShiftCoalgebra(q, radius, v, Y, ops["dot"], ops["dpu"], ops["up"], ops["down"], rep)

    # block embeddings alternate between morphisms and antimorphisms
    for j in sc.blocks:
        target = Y if j % 2 == 0 else cop(Y)
        is_coalgebra_map(sc.embed(j), q.coalg, target, rep, f"embed[{j}]")

    yc = tensor_coalgebra(Y, cop(Y))
    yy = tensor_coalgebra(Y, Y)
    is_coalgebra_map(sc.dot, yc, Y, rep, "dot")
    is_coalgebra_map(sc.dpu, yc, Y, rep, "dpu")
    is_coalgebra_map(sc.up, yy, Y, rep, "up")
    is_coalgebra_map(sc.down, yy, Y, rep, "down")

    a, b = vars_("a b")
    vs = [(a, Y.delta), (b, Y.delta)]
    dot, dpu, up, down = (Fn(m) for m in (sc.dot, sc.dpu, sc.up, sc.down))
    e = tensor(a, Fn(Y.counit)(b))
    rep.check("dot_then_up", compare_terms(up(dot(a, b[1]), b[2]), e, vs))
    rep.check("up_then_dot", compare_terms(dot(up(a, b[1]), b[2]), e, vs))
    rep.check("dpu_then_down", compare_terms(down(dpu(a, b[2]), b[1]), e, vs))
    rep.check("down_then_dpu", compare_terms(dpu(down(a, b[2]), b[1]), e, vs))

    exchange = rep.check("exchange_law", compare_terms(
        tensor(dpu(b[1], a[2]), dot(a[1], b[2])), tensor(dpu(b[2], a[1]), dot(a[2], b[1])), vs))
    conds = all(_conditions(v, i, rep) for i in range(lo - 1, hi + 2))
    rep.check("exchange_law_iff_conditions", exchange == conds)
    rep.untested("exchange_law_outside_window",
                 f"block pairs with an index outside [-{radius}, {radius}] are not represented")

    if isinstance(x, QBrace):
        _projection_check(sc, x, rep)
    if radius == 0:
        same = all(sc_op == q_op for sc_op, q_op in
                   ((sc.dot, q.p), (sc.dpu, q.d), (sc.up, v.ladder.gp[0]), (sc.down, v.ladder.gd[0])))
        rep.check("window_zero_is_X", same)
    rep.data["dim"] = Y.dim
    rep.data["ladder_range"] = [lo, hi]
    return sc


def _projection_check(sc: ShiftCoalgebra, qb: QBrace, rep: Report) -> None:
    """x_j -> S^j(x) carries the window operations to those of H."""
    H = qb.hopf
    if not H.bijective_antipode:
        rep.untested("projection_to_H", "antipode is not bijective")
        return
    pi = Matrix(H.field, H.dim, sc.coalg.dim, [c for j in sc.blocks for c in H.S(j).cols])
    pp = kron(pi, pi)
    lad = sc.ladders.ladder
    rep.check("projection_to_H", all(
        pi @ mine == theirs @ pp
        for mine, theirs in ((sc.dot, qb.dot), (sc.dpu, qb.dpu), (sc.up, lad.gp[0]), (sc.down, lad.gd[0]))))
