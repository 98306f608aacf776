"""Command line front end: ``qbw check|derive|convert|zoo|report``.

Exit codes: 0 when every check passes, 1 when any check fails (or a
derivation is refused), 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .analysis import a_plus_h_ideal, q_commutator, quotient_qbrace, socle
from .braiding import (NotLeftNondegenerate, QMagma, Solution, braid_check_conditions, nondegeneracy_report,
                       qcycle_check, qmagma_from_solution, solution_from_qmagma, validate_qmagma)
from .coalgebra import Coalgebra, flip, validate_coalgebra
from .field import FieldSpec
from .fileformat import ParseError, StructureFile, emit, from_object, load, to_object
from .hopf import HopfAlgebra, validate_bialgebra, validate_hopf
from .ladder import LadderObstruction, regularity_ladder, very_strong_regularity
from .qbrace import QBrace, bicrossed_product, bullet_tower, qbrace_validate, times_layer
from .report import Report
from .shift import WindowUnderflow, shift_coalgebra
from .skewbrace import (Cocycle, GVSkewBrace, LinearQCycle, NotASkewBrace, ValidationFailure, cocycle_bridge,
                        from_gv, from_linear_qcycle, gv_from_cocycle, skew_brace_report, to_gv, to_linear_qcycle,
                        validate_cocycle, validate_gv, validate_linear_qcycle)
from .tensor import compare_matrices
from .zoo import ZOO_NAMES, BadParams, UnknownExample, build

log = logging.getLogger("qbw")

LEVELS = ("coalgebra", "hopf", "solution", "qmagma", "qcycle", "qbrace", "skew-brace")
DERIVATIONS = ("qmagma", "solution", "bicrossed", "times-layer", "socle", "q-commutator", "quotient",
               "ladder", "bullet-tower(n)", "shift(m)", "gv", "linear-qcycle", "cocycle")
FORMS = {"qbrace": "qbrace", "gv": "gv-skew-brace", "gv-skew-brace": "gv-skew-brace",
         "linear-qcycle": "linear-qcycle", "cocycle": "cocycle"}


class UsageError(Exception):
    pass


class Refused(Exception):
    """A derivation or conversion that the input does not support."""


# ---------------------------------------------------------------------------
# inputs


def _field(text: str | None) -> FieldSpec | None:
    if text is None:
        return None
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --field: {exc}") from None


def resolve(source: str, field: FieldSpec | None = None) -> tuple[StructureFile, object]:
    """A structure file path or ``zoo:NAME``, as (file, domain object)."""
    if source.startswith("zoo:"):
        try:
            obj = build(source[4:], field)
        except (UnknownExample, BadParams) as exc:
            raise UsageError(f"{type(exc).__name__}: {exc}") from None
        return from_object(obj, [f"zoo {source[4:]}"]), obj
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such file: {source}")
    sf = load(path)
    if field is not None and field != sf.field:
        raise UsageError(f"--field {field} does not match the file's field {sf.field}")
    try:
        obj = to_object(sf)
    except ValueError as exc:
        obj = exc
    return sf, obj


def _ladder_range(text: str | None, default: tuple[int, int]) -> tuple[int, int]:
    if text is None:
        return default
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if not m:
        raise UsageError("--ladder-range expects a..b")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > 0 or hi < 0:
        raise UsageError("--ladder-range must contain 0")
    return lo, hi


# ---------------------------------------------------------------------------
# check


def _default_level(kind: str) -> str:
    return {"coalgebra": "coalgebra", "bialgebra": "hopf", "hopf": "hopf", "solution": "qcycle",
            "qmagma": "qcycle", "qbrace": "qbrace"}.get(kind, "skew-brace")


def _upto(level: str, name: str) -> bool:
    return LEVELS.index(name) <= LEVELS.index(level)


def _file_antipode(sf: StructureFile, h: HopfAlgebra, rep: Report) -> None:
    given = sf.tensors.get("antipode")
    if given is not None and h.antipode is not None:
        rep.check("hopf.antipode_matches_file", compare_matrices(given, h.antipode))


def check_structure(sf: StructureFile, obj, level: str | None = None) -> Report:
    level = level or _default_level(sf.kind)
    if level not in LEVELS:
        raise UsageError(f"unknown level {level!r}; expected one of {', '.join(LEVELS)}")
    rep = Report(f"{sf.kind} dim {sf.dim} up to {level}")
    if isinstance(obj, Exception):
        rep.check("construct", False, str(obj))
        return rep
    coalg = (obj.coalg if isinstance(obj, (HopfAlgebra, Solution, QMagma, LinearQCycle))
             else obj.hopf.coalg if isinstance(obj, (QBrace, GVSkewBrace, Cocycle)) else obj)
    rep.extend(validate_coalgebra(coalg), "coalgebra.")
    if not rep.ok or level == "coalgebra":
        return rep
    hopf = obj if isinstance(obj, HopfAlgebra) else getattr(obj, "hopf", None)
    if hopf is not None:
        rep.extend(validate_hopf(hopf) if hopf.antipode is not None else validate_bialgebra(hopf), "hopf.")
        _file_antipode(sf, hopf, rep)
        if not rep.ok:
            return rep
    if isinstance(obj, (Coalgebra, HopfAlgebra)):
        return rep

    if isinstance(obj, GVSkewBrace):
        rep.extend(validate_gv(obj), "gv.")
        return rep
    if isinstance(obj, LinearQCycle):
        rep.extend(validate_linear_qcycle(obj), "linear_qcycle.")
        return rep
    if isinstance(obj, Cocycle):
        rep.extend(validate_cocycle(obj), "cocycle.")
        return rep

    if isinstance(obj, Solution):
        rep.check("solution.coalgebra_endomorphism", obj.is_coalgebra_endomorphism())
        rep.extend(nondegeneracy_report(obj), "solution.")
        if not _upto(level, "qmagma"):
            return rep
        q = qmagma_from_solution(obj)
        if isinstance(q, NotLeftNondegenerate):
            rep.check("qmagma.left_nondegenerate", False, str(q))
            return rep
    elif isinstance(obj, QMagma):
        q = obj
    else:
        q = obj.qmagma
    if _upto(level, "qmagma"):
        rep.extend(validate_qmagma(q), "qmagma.")
    if _upto(level, "qcycle") and rep.ok:
        qc = qcycle_check(q)
        rep.extend(qc, "qcycle.")
        if q.left_regular:
            conds = braid_check_conditions(q.solution())
            rep.data["braid"] = qc.data.get("braid")
            if all(conds) != qc.data.get("braid"):
                raise ArithmeticError("braid conditions disagree with the braid equation")
    if not isinstance(obj, QBrace) or not rep.ok:
        return rep
    if _upto(level, "qbrace"):
        rep.extend(qbrace_validate(obj), "qbrace.")
    if _upto(level, "skew-brace") and rep.ok:
        rep.check("skew_brace", compare_matrices(obj.doubletimes, obj.times @ flip(obj.field, obj.dim)))
        if rep.ok:
            rep.extend(skew_brace_report(obj), "skew_brace.")
    return rep


def _check_one(source: str, level: str | None, field: str | None) -> tuple[str, bool, dict]:
    sf, obj = resolve(source, _field(field))
    rep = check_structure(sf, obj, level)
    rep.subject = f"{source}: {rep.subject}"
    return rep.render(), rep.ok, rep.to_dict()


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("QBW_THREADS", "1")))
    except ValueError:
        return 1


def cmd_check(args) -> int:
    jobs = [(s, args.level, args.field) for s in args.inputs]
    n = min(_workers(), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_check_one, *zip(*jobs)))
    else:
        results = [_check_one(*j) for j in jobs]
    for text, _, _ in results:
        print(text)
    if args.out:
        Path(args.out).write_text(json.dumps([d for _, _, d in results], indent=2) + "\n")
    return 0 if all(ok for _, ok, _ in results) else 1


# ---------------------------------------------------------------------------
# derive / convert


def _as_qbrace(obj) -> QBrace:
    if isinstance(obj, QBrace):
        return obj
    if isinstance(obj, GVSkewBrace):
        return from_gv(obj)
    if isinstance(obj, LinearQCycle):
        return from_linear_qcycle(obj)
    if isinstance(obj, Cocycle):
        return from_gv(gv_from_cocycle(obj))
    raise Refused(f"a Hopf q-brace is needed, got {type(obj).__name__}")


def _convert(qb: QBrace, form: str):
    if form == "qbrace":
        return qb
    gv = to_gv(qb)
    if form == "gv-skew-brace":
        return gv
    if form == "linear-qcycle":
        return to_linear_qcycle(qb)
    return cocycle_bridge(gv)


def _validate_form(obj) -> Report:
    if isinstance(obj, QBrace):
        return qbrace_validate(obj, deep=False)
    if isinstance(obj, GVSkewBrace):
        return validate_gv(obj)
    if isinstance(obj, LinearQCycle):
        return validate_linear_qcycle(obj)
    return validate_cocycle(obj)


def derive(sf: StructureFile, obj, what: str, window: int | None, ladder: str | None):
    """Returns (StructureFile or None, Report)."""
    if isinstance(obj, Exception):
        raise Refused(f"input does not build: {obj}")
    m = re.fullmatch(r"([a-z-]+)(?:\((\d+)\))?", what)
    if not m:
        raise UsageError(f"unknown derivation {what!r}")
    name, arg = m.group(1), m.group(2)
    if name == "solution":
        q = obj.qmagma if isinstance(obj, QBrace) else obj
        if not isinstance(q, QMagma):
            raise Refused("solution needs a q-magma or q-brace")
        sol = solution_from_qmagma(q)
        if not isinstance(sol, Solution):
            raise Refused(str(sol))
        return from_object(sol), nondegeneracy_report(sol)
    if name == "qmagma":
        if isinstance(obj, QBrace):
            q = obj.qmagma
        elif isinstance(obj, Solution):
            q = qmagma_from_solution(obj)
            if isinstance(q, NotLeftNondegenerate):
                raise Refused(str(q))
        else:
            raise Refused("qmagma needs a solution or q-brace")
        return from_object(q), validate_qmagma(q)
    if name in ("gv", "linear-qcycle", "cocycle"):
        out = _convert(_as_qbrace(obj), FORMS[name])
        return from_object(out), _validate_form(out)

    qb = _as_qbrace(obj)
    if name == "bicrossed":
        h = bicrossed_product(qb.hopf, qb.hopf, qb.solution.s2, qb.solution.s1)
        return from_object(h), validate_hopf(h)
    if name == "times-layer":
        return None, times_layer(qb)
    if name == "socle":
        sd = socle(qb)
        sd.report.data["soc_basis"] = [dict(sorted(r.items())) for r in sd.soc.rows]
        return None, sd.report
    if name == "q-commutator":
        ideal, quot = q_commutator(qb)
        quot.report.data["ideal_dim"] = ideal.rank
        quot.report.data["quotient_dim"] = quot.qbrace.dim
        return from_object(quot.qbrace), quot.report
    if name == "quotient":
        ideal = a_plus_h_ideal(qb, socle(qb).soc)
        quot = quotient_qbrace(qb, ideal)
        quot.report.data["ideal_dim"] = ideal.rank
        return from_object(quot.qbrace), quot.report
    if name == "ladder":
        lo, hi = _ladder_range(ladder, (-2, 2))
        rep = Report(f"ladder [{lo}, {hi}]")
        lad = regularity_ladder(qb.qmagma, lo, hi)
        if isinstance(lad, LadderObstruction):
            rep.check("ladder", False, f"obstruction at rung {lad.index}: {lad.which}")
            return None, rep
        rep.extend(lad.report)
        rep.check("very_strong_regularity", not isinstance(very_strong_regularity(qb.qmagma, lo, hi),
                                                           LadderObstruction))
        return None, rep
    if name == "bullet-tower":
        if arg is None:
            raise UsageError("bullet-tower needs n, as bullet-tower(2)")
        tower = bullet_tower(qb, int(arg))
        return from_object(tower), qbrace_validate(tower, deep=False)
    if name == "shift":
        radius = int(arg) if arg is not None else (window if window is not None else 2)
        lr = _ladder_range(ladder, (-radius, radius))
        return None, shift_coalgebra(qb, radius, lr).report
    raise UsageError(f"unknown derivation {what!r}; expected one of {', '.join(DERIVATIONS)}")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_derive(args) -> int:
    sf, obj = resolve(args.input, _field(args.field))
    out, rep = derive(sf, obj, args.what, args.window, args.ladder_range)
    if out is not None and rep.ok:
        _write(emit(out), args.out)
        print(rep.render(), file=sys.stderr)
    else:
        text = rep.render() + "\n"
        if args.out and out is None:
            Path(args.out).write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
        print(text, end="")
    return 0 if rep.ok else 1


def cmd_convert(args) -> int:
    if args.target not in FORMS:
        raise UsageError(f"unknown target {args.target!r}; expected one of {', '.join(FORMS)}")
    sf, obj = resolve(args.input, _field(args.field))
    if isinstance(obj, Exception) or sf.kind not in FORMS.values():
        raise Refused(f"convert needs a skew-brace form, got {sf.kind}")
    qb = _as_qbrace(obj)
    out = _convert(qb, FORMS[args.target])
    rep = Report(f"convert {sf.kind} -> {FORMS[args.target]}")
    rep.extend(_validate_form(out), "target.")
    back = _convert(_as_qbrace(out), sf.kind)
    rep.check("roundtrip", emit(from_object(back)) == emit(from_object(obj)))
    if rep.ok:
        _write(emit(from_object(out, sf.comments)), args.out)
    print(rep.render(), file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_zoo(args) -> int:
    if args.list or not args.name:
        print("\n".join(ZOO_NAMES))
        return 0
    sf, _ = resolve("zoo:" + args.name, _field(args.field))
    _write(emit(sf), args.out)
    return 0


def cmd_report(args) -> int:
    sf, obj = resolve(args.input, _field(args.field))
    rep = check_structure(sf, obj, args.level)
    out = {"check": rep.to_dict()}
    if rep.ok and isinstance(obj, QBrace):
        extra = ["times-layer", "ladder", "socle"]
        if obj.hopf.bijective_antipode:
            extra.append("q-commutator")
        for what in extra:
            try:
                _, r = derive(sf, obj, what, args.window, args.ladder_range)
            except (Refused, ValidationFailure, ArithmeticError) as exc:
                r = Report(what)
                r.check(what, False, str(exc))
            out[what] = r.to_dict()
            rep.extend(r, what + ".")
    text = json.dumps(out, indent=2) + "\n"
    _write(text, args.out)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qbw", description="Exact Hopf q-brace workbench.")
    p.add_argument("--version", action="version", version=f"qbw {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec such as Q, Q(zeta3) or F7")
    common.add_argument("--level", help=f"one of {', '.join(LEVELS)}")
    common.add_argument("--window", type=int, help="shift window radius m")
    common.add_argument("--ladder-range", dest="ladder_range", help="rungs a..b")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate structures")
    c.add_argument("inputs", nargs="+", help="files or zoo:NAME")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("derive", parents=[common], help="derive a structure or an analysis")
    d.add_argument("input")
    d.add_argument("what", help=f"one of {', '.join(DERIVATIONS)}")
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("convert", parents=[common], help="convert between skew-brace forms")
    v.add_argument("input")
    v.add_argument("target", help=f"one of {', '.join(sorted(set(FORMS)))}")
    v.set_defaults(func=cmd_convert)

    z = sub.add_parser("zoo", parents=[common], help="emit a built-in example")
    z.add_argument("name", nargs="?")
    z.add_argument("--list", action="store_true")
    z.set_defaults(func=cmd_zoo)

    r = sub.add_parser("report", parents=[common], help="full JSON report")
    r.add_argument("input")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"qbw: error: {exc}", file=sys.stderr)
        return 2
    except NotASkewBrace as exc:
        print(f"qbw: NotASkewBrace: {exc}", file=sys.stderr)
        return 1
    except (Refused, ValidationFailure, WindowUnderflow, ValueError) as exc:
        print(f"qbw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
