import pytest

from etalecomp.symbolic import (Subshift, SubshiftError, boolean,
                                complement, difference, intersect, refine,
                                relate, union)

from conftest import C


def test_sibling_merge(full2):
    assert C(full2, "00", "01") == C(full2, "0")
    assert C(full2, "0", "1").is_whole


def test_merge_on_f2_boundary(f2shift):
    assert C(f2shift, "aa", "ab", "aB").format() == ["a"]


def test_inadmissible_word_names_pair(f2shift):
    with pytest.raises(SubshiftError, match="aA"):
        C(f2shift, "aA")


def test_absorbed_words(full2):
    assert C(full2, "0", "01", "011").format() == ["0"]


def test_complement(full2, f2shift):
    assert complement(C(full2, "0")).format() == ["1"]
    assert complement(full2.whole()).is_empty
    assert complement(full2.empty()).is_whole
    assert complement(C(f2shift, "a")).format() == ["A", "b", "B"]


def test_boolean_ops(full2):
    a, b = C(full2, "0"), C(full2, "00", "1")
    assert union(a, b).is_whole
    assert intersect(a, b).format() == ["00"]
    assert difference(a, b).format() == ["01"]
    assert boolean("complement", a).format() == ["1"]
    with pytest.raises(ValueError):
        boolean("xor", a, b)


def test_mismatched_subshifts(full2):
    other = Subshift(3)
    with pytest.raises(SubshiftError):
        union(full2.whole(), other.whole())


def test_relate(full2):
    assert relate(C(full2, "0"), full2.whole()) == "subset"
    assert relate(C(full2, "00"), C(full2, "01")) == "disjoint"
    assert relate(C(full2, "0", "10"), C(full2, "1")) == "overlapping"
    assert relate(full2.whole(), C(full2, "1")) == "superset"
    assert relate(C(full2, "1"), C(full2, "10", "11")) == "equal"


def test_refine(full2, f2shift):
    fmt = full2.format_word
    assert [fmt(w) for w in refine(C(full2, "0"), 2)] == ["00", "01"]
    assert sorted(f2shift.format_word(w) for w in refine(f2shift.whole(), 1)) == sorted("aAbB")
    assert sorted(f2shift.format_word(w) for w in refine(C(f2shift, "a"), 2)) == sorted(["aa", "ab", "aB"])
    with pytest.raises(SubshiftError):
        refine(C(full2, "000"), 2)


def test_empty_word_and_empty_set(full2):
    assert full2.parse_word("") == () == full2.parse_word("ε")
    assert full2.empty().is_empty
    assert C(full2, "").is_whole


def test_bad_transition_matrix():
    with pytest.raises(SubshiftError):
        Subshift(2, ((0, 0), (1, 1)))
    with pytest.raises(SubshiftError):
        Subshift(65)


def test_multichar_names_roundtrip():
    s = Subshift(2, names=("x1", "x2"))
    w = s.parse_word("x1.x2.x2")
    assert w == (0, 1, 1)
    assert s.format_word(w) == "x1.x2.x2"


def test_golden_mean_words():
    s = Subshift(2, ((1, 1), (1, 0)))
    assert len(s.words(3)) == 5
    assert not s.is_admissible((1, 1))
