"""Plain-text structure-constant files.

A file looks like::

    qbw-structure 1
    field Q(zeta3)
    kind qbrace
    basis H "1" "g" "x" "gx"
    tensor mu
      0 0 0 "1"
      ...
    end

Each tensor row lists output indices, then input indices, then a quoted
scalar literal.  Rows missing from a block are zero.  Emission sorts rows
lexicographically so that files diff cleanly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .braiding import QMagma, Solution
from .coalgebra import Coalgebra
from .field import FieldSpec
from .hopf import HopfAlgebra
from .linalg import Matrix, Vector
from .qbrace import QBrace
from .skewbrace import Cocycle, GVSkewBrace, LinearQCycle

__all__ = [
    "FORMAT_VERSION",
    "KINDS",
    "ParseError",
    "StructureFile",
    "emit",
    "from_object",
    "load",
    "parse",
    "save",
    "to_object",
]

FORMAT_VERSION = 1
MAGIC = "qbw-structure"

# tensor name -> (output spaces, input spaces)
_COALG = {"delta": ("HH", "H"), "counit": ("", "H")}
_BIALG = {**_COALG, "mu": ("H", "HH"), "unit": ("H", "")}
_HOPF = {**_BIALG, "antipode": ("H", "H")}
_BIN = ("H", "HH")

KINDS: dict[str, dict[str, tuple[str, str]]] = {
    "coalgebra": _COALG,
    "bialgebra": _BIALG,
    "hopf": _HOPF,
    "solution": {**_COALG, "s": ("HH", "HH")},
    "qmagma": {**_COALG, "dot": _BIN, "dpu": _BIN},
    "qbrace": {**_HOPF, "dot": _BIN, "dpu": _BIN},
    "gv-skew-brace": {**_HOPF, "times": _BIN, "T_times": ("H", "H")},
    "linear-qcycle": {**_COALG, "one": ("H", ""), "times": _BIN, "T_times": ("H", "H"), "dot": _BIN},
    "cocycle": {
        **_HOPF,
        "target_delta": ("AA", "A"), "target_counit": ("", "A"), "one": ("A", ""),
        "times": ("A", "AA"), "T_times": ("A", "A"), "action": ("A", "AH"), "pi": ("A", "H"),
    },
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class StructureFile:
    kind: str
    field: FieldSpec
    bases: dict[str, list[str]]
    tensors: dict[str, Matrix]
    version: int = FORMAT_VERSION
    comments: list[str] = field(default_factory=list, compare=False)

    @property
    def dim(self) -> int:
        return len(self.bases["H"])

    def shape(self, name: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
        out, inp = KINDS[self.kind][name]
        return tuple(len(self.bases[s]) for s in out), tuple(len(self.bases[s]) for s in inp)

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureFile) and self.kind == other.kind and self.field == other.field
                and self.bases == other.bases and self.tensors == other.tensors)


# ---------------------------------------------------------------------------
# emission


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _literal(f: FieldSpec, value) -> str:
    text = f.format(value)
    return re.sub(r"\s*\(zeta \d+\)$", "", text)


def _rows(m: Matrix) -> list[tuple[tuple[int, ...], Any]]:
    out = []
    for j, col in enumerate(m.cols):
        cin = _unravel(j, m.cdims)
        for i, v in col.items():
            out.append((_unravel(i, m.rdims) + cin, v))
    out.sort(key=lambda r: r[0])
    return out


def _unravel(k: int, dims: tuple[int, ...]) -> tuple[int, ...]:
    idx = []
    for d in reversed(dims):
        k, r = divmod(k, d)
        idx.append(r)
    return tuple(reversed(idx))


def emit(sf: StructureFile) -> str:
    lines = [f"{MAGIC} {sf.version}", f"field {sf.field}", f"kind {sf.kind}"]
    lines += [f"# {c}" for c in sf.comments]
    for space in sorted(sf.bases):
        lines.append(f"basis {space} " + " ".join(_quote(x) for x in sf.bases[space]))
    for name in KINDS[sf.kind]:
        if name not in sf.tensors:
            continue
        lines.append(f"tensor {name}")
        for idx, v in _rows(sf.tensors[name]):
            lines.append("  " + " ".join(map(str, idx)) + " " + _quote(_literal(sf.field, v)))
        lines.append("end")
    return "\n".join(lines) + "\n"


def save(sf: StructureFile, path: str | Path) -> None:
    Path(path).write_text(emit(sf))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r'"((?:[^"\\]|\\.)*)"|(\S+)')


def _tokens(line: str, lineno: int) -> list[tuple[str, int, bool]]:
    """(text, column, quoted) triples; columns are 1-based."""
    out = []
    pos = 0
    for m in _TOKEN.finditer(line):
        if line[pos:m.start()].strip():
            raise ParseError("unterminated string", lineno, pos + 1)
        pos = m.end()
        if m.group(1) is not None:
            out.append((re.sub(r"\\(.)", r"\1", m.group(1)), m.start() + 1, True))
        else:
            if m.group(2).startswith('"'):
                raise ParseError("unterminated string", lineno, m.start() + 1)
            out.append((m.group(2), m.start() + 1, False))
    return out


def parse(text: str) -> StructureFile:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MAGIC):
        raise ParseError(f"expected header '{MAGIC} <version>'", 1, 1)
    head = _tokens(lines[0], 1)
    if len(head) != 2 or not head[1][0].isdigit():
        raise ParseError("malformed header", 1, 1)
    version = int(head[1][0])
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version}", 1, head[1][1])

    fspec: FieldSpec | None = None
    kind: str | None = None
    bases: dict[str, list[str]] = {}
    raw: dict[str, list[tuple[int, list[tuple[str, int, bool]]]]] = {}
    comments: list[str] = []
    current: str | None = None
    for n, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
            continue
        toks = _tokens(line, n)
        word, col, _ = toks[0]
        if current is not None:
            if word == "end" and len(toks) == 1:
                current = None
            else:
                raw[current].append((n, toks))
            continue
        if word == "field":
            try:
                fspec = FieldSpec.parse(line[toks[1][1] - 1:].strip() if len(toks) > 1 else "")
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad field: {exc}", n, toks[1][1] if len(toks) > 1 else col) from None
        elif word == "kind":
            if len(toks) != 2 or toks[1][0] not in KINDS:
                raise ParseError(f"unknown kind; expected one of {', '.join(KINDS)}", n,
                                 toks[1][1] if len(toks) > 1 else col)
            kind = toks[1][0]
        elif word == "basis":
            if len(toks) < 3 or toks[1][0] not in ("H", "A"):
                raise ParseError("expected 'basis H|A <labels>'", n, col)
            bases[toks[1][0]] = [t for t, _, _ in toks[2:]]
        elif word == "tensor":
            if len(toks) != 2:
                raise ParseError("expected 'tensor <name>'", n, col)
            current = toks[1][0]
            if current in raw:
                raise ParseError(f"duplicate tensor {current}", n, toks[1][1])
            raw[current] = []
            raw[current].append((n, toks[1:2]))
        else:
            raise ParseError(f"unexpected {word!r}", n, col)
    if current is not None:
        raise ParseError(f"tensor {current} is missing 'end'", len(lines), 1)
    if fspec is None:
        raise ParseError("missing field line", 2, 1)
    if kind is None:
        raise ParseError("missing kind line", 3, 1)
    schema = KINDS[kind]
    needed = {s for out, inp in schema.values() for s in out + inp}
    for s in sorted(needed):
        if s not in bases:
            raise ParseError(f"missing basis {s}", len(lines), 1)
    sf = StructureFile(kind, fspec, bases, {}, version, comments)
    for name, rows in raw.items():
        decl_line, decl = rows[0]
        if name not in schema:
            raise ParseError(f"tensor {name!r} does not belong to kind {kind}", decl_line, decl[0][1])
        sf.tensors[name] = _build_tensor(sf, name, rows[1:])
    optional = {"antipode"}
    for name in schema:
        if name not in sf.tensors and name not in optional:
            raise ParseError(f"missing tensor {name}", len(lines), 1)
    return sf


def _build_tensor(sf: StructureFile, name: str, rows) -> Matrix:
    rdims, cdims = sf.shape(name)
    k = len(rdims) + len(cdims)
    f = sf.field
    nrows = _prod(rdims)
    ncols = _prod(cdims)
    cols: list[dict] = [{} for _ in range(ncols)]
    for n, toks in rows:
        if len(toks) != k + 1 or not toks[-1][2]:
            raise ParseError(f"expected {k} indices and a quoted scalar", n, toks[0][1])
        idx = []
        for (t, c, quoted), bound in zip(toks[:k], rdims + cdims):
            if quoted or not t.isdigit():
                raise ParseError(f"bad index {t!r}", n, c)
            if int(t) >= bound:
                raise ParseError(f"index {t} out of range (< {bound})", n, c)
            idx.append(int(t))
        text, c, _ = toks[-1]
        try:
            v = f.parse_literal(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}: {exc}", n, c) from None
        r = _ravel(idx[:len(rdims)], rdims)
        j = _ravel(idx[len(rdims):], cdims)
        if r in cols[j]:
            raise ParseError("duplicate entry", n, toks[0][1])
        cols[j][r] = v
    return Matrix(f, nrows, ncols, cols, rdims, cdims)


def _prod(dims) -> int:
    out = 1
    for d in dims:
        out *= d
    return out


def _ravel(idx, dims) -> int:
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def load(path: str | Path) -> StructureFile:
    return parse(Path(path).read_text())


# ---------------------------------------------------------------------------
# domain objects


def _vector(m: Matrix) -> Vector:
    return m.column(0)


def _coalg(sf: StructureFile, prefix: str = "", space: str = "H") -> Coalgebra:
    labels = sf.bases[space]
    return Coalgebra(sf.field, labels, sf.tensors[prefix + "delta"], sf.tensors[prefix + "counit"])


def _hopf(sf: StructureFile) -> HopfAlgebra:
    c = _coalg(sf)
    require = sf.kind != "bialgebra"
    return HopfAlgebra(c, sf.tensors["mu"], _vector(sf.tensors["unit"]), require_antipode=require)


def to_object(sf: StructureFile):
    """Build the domain object.  A supplied antipode is not trusted; compare it separately."""
    t = sf.tensors
    kind = sf.kind
    if kind == "coalgebra":
        return _coalg(sf)
    if kind in ("bialgebra", "hopf"):
        return _hopf(sf)
    if kind == "solution":
        return Solution(_coalg(sf), t["s"])
    if kind == "qmagma":
        return QMagma(_coalg(sf), t["dot"], t["dpu"])
    if kind == "qbrace":
        return QBrace(_hopf(sf), t["dot"], t["dpu"])
    if kind == "gv-skew-brace":
        return GVSkewBrace(_hopf(sf), t["times"], t["T_times"])
    if kind == "linear-qcycle":
        return LinearQCycle(_coalg(sf), _vector(t["one"]), t["times"], t["T_times"], t["dot"])
    H = _hopf(sf)
    target = Coalgebra(sf.field, sf.bases["A"], t["target_delta"], t["target_counit"])
    return Cocycle(H, target, _vector(t["one"]), t["times"], t["T_times"], t["action"], t["pi"])


def from_object(obj, comments: list[str] | None = None) -> StructureFile:
    def coalg_tensors(c: Coalgebra, prefix: str = "") -> dict[str, Matrix]:
        return {prefix + "delta": c.delta, prefix + "counit": c.counit}

    def hopf_tensors(h: HopfAlgebra) -> dict[str, Matrix]:
        out = {**coalg_tensors(h.coalg), "mu": h.mu, "unit": h.eta}
        if h.antipode is not None:
            out["antipode"] = h.antipode
        return out

    if isinstance(obj, QBrace):
        kind, f, labels = "qbrace", obj.hopf.field, obj.hopf.labels
        tensors = {**hopf_tensors(obj.hopf), "dot": obj.dot, "dpu": obj.dpu}
    elif isinstance(obj, HopfAlgebra):
        kind = "hopf" if obj.antipode is not None else "bialgebra"
        f, labels, tensors = obj.field, obj.labels, hopf_tensors(obj)
    elif isinstance(obj, Coalgebra):
        kind, f, labels, tensors = "coalgebra", obj.field, obj.labels, coalg_tensors(obj)
    elif isinstance(obj, Solution):
        kind, f, labels = "solution", obj.field, obj.coalg.labels
        tensors = {**coalg_tensors(obj.coalg), "s": obj.s}
    elif isinstance(obj, QMagma):
        kind, f, labels = "qmagma", obj.field, obj.coalg.labels
        tensors = {**coalg_tensors(obj.coalg), "dot": obj.p, "dpu": obj.d}
    elif isinstance(obj, GVSkewBrace):
        kind, f, labels = "gv-skew-brace", obj.hopf.field, obj.hopf.labels
        tensors = {**hopf_tensors(obj.hopf), "times": obj.times, "T_times": obj.T_times}
    elif isinstance(obj, LinearQCycle):
        kind, f, labels = "linear-qcycle", obj.field, obj.coalg.labels
        tensors = {**coalg_tensors(obj.coalg), "one": Matrix.column_vector(obj.one), "times": obj.times,
                   "T_times": obj.T_times, "dot": obj.dot}
    elif isinstance(obj, Cocycle):
        kind, f, labels = "cocycle", obj.hopf.field, obj.hopf.labels
        tensors = {**hopf_tensors(obj.hopf), **coalg_tensors(obj.target, "target_"),
                   "one": Matrix.column_vector(obj.one), "times": obj.times, "T_times": obj.T_times,
                   "action": obj.action, "pi": obj.pi}
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    bases = {"H": list(labels)}
    if kind == "cocycle":
        bases["A"] = list(obj.target.labels)
    sf = StructureFile(kind, f, bases, {}, FORMAT_VERSION, list(comments or []))
    for name, m in tensors.items():
        rdims, cdims = sf.shape(name)
        sf.tensors[name] = m.with_dims(rdims, cdims)
    return sf
