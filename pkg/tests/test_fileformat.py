import pytest

from qbw.fileformat import ParseError, emit, from_object, load, parse, save, to_object
from qbw.skewbrace import cocycle_bridge, to_gv, to_linear_qcycle
from qbw.zoo import build

HEADER = 'qbw-structure 1\nfield Q\nkind coalgebra\nbasis H "1"\n'
GOOD = HEADER + 'tensor delta\n  0 0 0 "1"\nend\ntensor counit\n  0 "1"\nend\n'

NAMES = ["taft(2)", "taft(3)", "dual_dihedral(2,3)", "group_conjugation(S3)", "rack(conjugation:S3)",
         "flip(2)", "group_algebra(Z/3)", "dual_group_algebra(S3)", "trivial_qbrace(Z/2)"]


@pytest.mark.parametrize("name", NAMES)
def test_zoo_roundtrip(zoo, name):
    obj = zoo(name)
    sf = from_object(obj)
    text = emit(sf)
    again = parse(text)
    assert again == sf
    assert emit(again) == text
    assert to_object(again) == obj


def test_skew_brace_kinds_roundtrip(zoo):
    qb = zoo("taft(2)")
    gv = to_gv(qb)
    for obj in (gv, to_linear_qcycle(qb), cocycle_bridge(gv)):
        sf = from_object(obj)
        assert parse(emit(sf)) == sf
        assert to_object(sf) == obj


def test_save_and_load(tmp_path, zoo):
    sf = from_object(zoo("taft(2)"), comments=["made by a test"])
    path = tmp_path / "t2.qbw"
    save(sf, path)
    assert "# made by a test" in path.read_text()
    assert load(path) == sf


def test_minimal_file_parses():
    sf = parse(GOOD)
    assert sf.kind == "coalgebra" and sf.bases["H"] == ["1"]


@pytest.mark.parametrize("text, line, column", [
    ("hello\n", 1, 1),
    ("qbw-structure 9\n", 1, 15),
    (GOOD.replace("kind coalgebra", "kind groupoid"), 3, 6),
    (GOOD.replace('0 "1"\nend\n', '0 "1/0"\nend\n', 1), 6, 9),
    (GOOD.replace("0 0 0", "0 0 7"), 6, 7),
    (GOOD.replace('"1"\nend\ntensor counit', '"1\nend\ntensor counit'), 6, 9),
    (GOOD.replace("tensor counit", "tensor mu"), 8, 8),
    (HEADER + 'tensor delta\n  0 0 0 "1"\n', 6, 1),
])
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_missing_tensor():
    text = HEADER + 'tensor delta\n  0 0 0 "1"\nend\n'
    with pytest.raises(ParseError, match="missing tensor counit"):
        parse(text)


def test_comments_are_ignored():
    assert parse(GOOD.replace("kind", "# top\nkind").replace("end\n", "  # inside\nend\n", 1)) == parse(GOOD)
