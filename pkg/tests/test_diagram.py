import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xcknot.diagram import (
    BUILTIN_NAMES,
    FIGURE8_WORD,
    AlphaLeg,
    BeadWord,
    DiagramSyntaxError,
    DiagramValidationError,
    KappaPow,
    Over,
    ParityWarning,
    Rot,
    RotDiagram,
    Under,
    builtin,
    format_diagram,
    load_diagram,
    parse_diagram,
    stats,
    to_bead_word,
    to_diagram,
)

NAMED = ["unknot", "curl+R", "curl+L", "curl-R", "curl-L", "curls(2)", "curls(-2)", "curls(3)", "figure8", "trefoil"]


def test_empty_diagram():
    D = parse_diagram("")
    assert D.events == ()
    assert stats(D).as_dict() == {k: 0 for k in stats(D).as_dict()}


def test_positive_curl():
    st_ = stats(parse_diagram("O+1 C- U+1"))
    assert (st_.writhe, st_.rot, st_.framing) == (1, -1, 1)
    assert st_.parity_ok


def test_two_curls():
    st_ = stats(parse_diagram("O+1 C- U+1 O+2 C- U+2"))
    assert (st_.writhe, st_.rot, st_.framing) == (2, -2, 2)


def test_figure8_stats():
    st_ = builtin("figure8").stats()
    assert (st_.n_plus, st_.n_minus, st_.m_plus, st_.m_minus) == (2, 2, 1, 1)
    assert (st_.writhe, st_.rot, st_.framing) == (0, 0, 0)


def test_curls_framing():
    assert builtin("curls(3)").stats().framing == 3
    assert builtin("curls(-2)").stats().framing == -2
    assert builtin("curls(0)").events == ()


def test_trefoil_framing():
    st_ = builtin("trefoil").stats()
    assert (st_.n_plus, st_.n_minus, st_.writhe) == (3, 0, 3)
    assert st_.parity_ok


def test_builtin_aliases():
    assert builtin("curl−R") == builtin("curl-R")
    with pytest.raises(ValueError):
        builtin("granny")
    assert "figure8" in BUILTIN_NAMES


@pytest.mark.parametrize("name", NAMED)
def test_builtin_parity_and_first_under_count(name):
    st_ = builtin(name).stats()
    assert (st_.rot + st_.writhe) % 2 == 0
    assert st_.rot + st_.writhe == 2 * (st_.n_plus_1 - st_.n_minus_1)


@pytest.mark.parametrize(
    "text",
    ["X+1", "O1", "O+", "C", "C+1", "O*1", "o+1"],
)
def test_syntax_errors(text):
    with pytest.raises(DiagramSyntaxError):
        parse_diagram(text)


@pytest.mark.parametrize(
    "text",
    ["O+1", "O+1 O+1", "U+1 U+1", "O+1 U-1", "O+1 U+1 O+1"],
)
def test_validation_errors(text):
    with pytest.raises(DiagramValidationError):
        parse_diagram(text)


def test_parity_warning():
    with pytest.warns(ParityWarning):
        D = parse_diagram("O+1 U+1")
    assert not D.stats().parity_ok


def test_load_diagram_with_comments(tmp_path):
    p = tmp_path / "curl.txt"
    p.write_text("# a positive curl\nO+1 C-   # over, then turn\nU+1\n", encoding="utf-8")
    assert load_diagram(p) == builtin("curl+R")


def test_concatenation():
    D = builtin("curl+R") + parse_diagram("O-2 C+ U-2")
    assert D.stats().writhe == 0
    with pytest.raises(DiagramValidationError):
        builtin("curl+R") + builtin("curl+R")


# --------------------------------------------------------------------------
# bead words
# --------------------------------------------------------------------------


def test_curl_words():
    assert str(to_bead_word(builtin("curl+R"))) == "b_1 k a_1"
    assert str(to_bead_word(builtin("curl+L"))) == "a_1 k^-1 b_1"
    assert str(to_bead_word(builtin("curl-R"))) == "bb_1 k^-1 ab_1"


def test_figure8_is_literal_word():
    W = to_bead_word(builtin("figure8"))
    assert W == FIGURE8_WORD
    assert str(W) == "ab_r bb_j a_i k^-1 b_l ab_j k bb_r a_l b_i"


def test_bead_word_validation():
    with pytest.raises(DiagramValidationError):
        BeadWord((AlphaLeg("1", False, 1),), {"1": 1})
    with pytest.raises(DiagramValidationError):
        BeadWord((AlphaLeg("1", True, 1), AlphaLeg("1", True, 2)), {"1": 1})
    with pytest.raises(DiagramValidationError):
        BeadWord((AlphaLeg("1", False, 3), AlphaLeg("1", False, 2)), {"1": 1})
    with pytest.raises(DiagramValidationError):
        BeadWord((KappaPow(2),), {})


def test_written_order():
    W = BeadWord.from_written([KappaPow(1), KappaPow(-1)], {})
    assert W.beads == (KappaPow(-1), KappaPow(1))
    assert W.written() == (KappaPow(1), KappaPow(-1))


# --------------------------------------------------------------------------
# random diagrams
# --------------------------------------------------------------------------


@st.composite
def diagrams(draw):
    n = draw(st.integers(0, 5))
    events = []
    for cid in range(n):
        sign = draw(st.sampled_from([1, -1]))
        events += [Over(sign, str(cid)), Under(sign, str(cid))]
    events += [Rot(draw(st.sampled_from([1, -1]))) for _ in range(draw(st.integers(0, 4)))]
    order = draw(st.permutations(range(len(events))))
    return RotDiagram(tuple(events[i] for i in order))


def _quiet_parse(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ParityWarning)
        return parse_diagram(text)


@given(diagrams())
def test_print_parse_round_trip(D):
    assert _quiet_parse(format_diagram(D)) == D
    assert format_diagram(_quiet_parse(format_diagram(D))) == format_diagram(D)


@given(diagrams())
def test_bead_counts(D):
    st_ = D.stats()
    W = to_bead_word(D)
    legs = [b for b in W.beads if isinstance(b, AlphaLeg)]
    kappas = [b for b in W.beads if isinstance(b, KappaPow)]
    assert len(legs) == 2 * (st_.n_plus + st_.n_minus)
    assert len(kappas) == st_.m_plus + st_.m_minus
    assert to_diagram(W) == D


@given(diagrams())
def test_stats_consistency(D):
    st_ = D.stats()
    assert st_.n_plus == st_.n_plus_1 + st_.n_plus_2
    assert st_.n_minus == st_.n_minus_1 + st_.n_minus_2
    assert st_.framing == st_.writhe
