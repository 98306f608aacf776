import json

import pytest

from qbw.cli import main
from qbw.fileformat import from_object, load
from qbw.zoo import ZOO_NAMES, build


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zoo_list(capsys):
    code, out, _ = run(capsys, "zoo", "--list")
    assert code == 0 and out.split() == list(ZOO_NAMES)


def test_zoo_emit_matches_library(capsys, tmp_path):
    path = tmp_path / "t3.qbw"
    assert run(capsys, "zoo", "taft(3)", "--out", str(path))[0] == 0
    assert load(path) == from_object(build("taft(3)"))


def test_check_levels(capsys):
    assert run(capsys, "check", "zoo:taft(3)", "--level", "qbrace")[0] == 0
    code, out, _ = run(capsys, "check", "zoo:taft(3)", "--level", "skew-brace")
    assert code == 1 and "fail" in out.lower()


def test_check_corrupted_file(capsys, tmp_path):
    path = tmp_path / "bad.qbw"
    run(capsys, "zoo", "taft(2)", "--out", str(path))
    lines = path.read_text().splitlines()
    start = lines.index("tensor dot")
    lines[start + 1] = lines[start + 1].rsplit(" ", 1)[0] + ' "3"'
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "check", str(path), "--level", "qbrace")
    assert code == 1 and "fail" in out.lower()


def test_check_in_parallel(capsys, monkeypatch):
    monkeypatch.setenv("QBW_THREADS", "2")
    code, out, _ = run(capsys, "check", "zoo:taft(2)", "zoo:group_conjugation(S3)", "--level", "qbrace")
    assert code == 0 and out.count("taft(2)") >= 1 and "group_conjugation(S3)" in out


def test_derive_socle(capsys):
    code, out, _ = run(capsys, "derive", "zoo:group_conjugation(S3)", "socle")
    assert code == 0 and "soc" in out


def test_derive_bicrossed_file_revalidates(capsys, tmp_path):
    path = tmp_path / "big.qbw"
    assert run(capsys, "derive", "zoo:taft(2)", "bicrossed", "--out", str(path))[0] == 0
    assert len(load(path).bases["H"]) == 16
    assert run(capsys, "check", str(path))[0] == 0


def test_convert_roundtrip(capsys, tmp_path):
    gv, back = tmp_path / "gv.qbw", tmp_path / "back.qbw"
    assert run(capsys, "convert", "zoo:dual_dihedral(2,1)", "gv", "--out", str(gv))[0] == 0
    assert run(capsys, "convert", str(gv), "qbrace", "--out", str(back))[0] == 0
    assert load(back) == from_object(build("dual_dihedral(2,1)"))


def test_convert_refuses_non_skew_brace(capsys):
    code, _, err = run(capsys, "convert", "zoo:taft(3)", "gv")
    assert code == 1 and "NotASkewBrace" in err


def test_report_json(capsys):
    code, out, _ = run(capsys, "report", "zoo:taft(2)")
    data = json.loads(out)
    assert code == 0 and {"check", "socle", "ladder"} <= set(data)


@pytest.mark.parametrize("argv", [["check", "/no/such/file"], ["derive", "zoo:taft(2)", "nonsense"], ["frobnicate"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 2
