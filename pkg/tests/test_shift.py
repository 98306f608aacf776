import pytest

from qbw.shift import WindowUnderflow, shift_coalgebra


@pytest.fixture(scope="module")
def window(zoo):
    return shift_coalgebra(zoo("taft(2)"), radius=1)


def test_taft2_window(window):
    rep = window.report
    assert rep.ok
    assert window.coalg.dim == 12
    for name in ("exchange_law", "exchange_law_iff_conditions", "projection_to_H", "dot_then_up"):
        assert rep.passed(name)
    assert rep.status("exchange_law_outside_window") == "untested"
    assert rep.status("cond_i[2]") == "untested"
    assert rep.status("cond_iv[-2]") == "untested"
    assert rep.passed("cond_iii[1]")


def test_embedding_outside_window(window):
    window.embed(1)
    with pytest.raises(WindowUnderflow):
        window.embed(2)
    with pytest.raises(WindowUnderflow):
        window.embed(-2)


def test_radius_zero_is_x(zoo):
    sc = shift_coalgebra(zoo("taft(2)"), radius=0)
    assert sc.report.passed("window_zero_is_X")
    assert sc.dot == zoo("taft(2)").dot


def test_ladder_range_too_narrow(zoo):
    with pytest.raises(WindowUnderflow):
        shift_coalgebra(zoo("taft(2)"), radius=2, ladder_range=(-1, 1))


def test_negative_radius(zoo):
    with pytest.raises(ValueError):
        shift_coalgebra(zoo("taft(2)"), radius=-1)


def test_qmagma_input_skips_projection(zoo):
    sc = shift_coalgebra(zoo("group_conjugation(S3)").qmagma, radius=1)
    assert sc.report.ok
    with pytest.raises(KeyError):
        sc.report["projection_to_H"]
