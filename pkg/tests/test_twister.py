import pytest
from hypothesis import given

from thurston4.twister import (FINITE_M, MElement, TwistCapExceeded, classify, family,
                               match_M, reduce_to_M)
from thurston4.virtualendo import psi_bar
from thurston4.words import Word, parse

from conftest import moduli_words


def test_match_M():
    assert match_M(Word()) == MElement("e")
    assert match_M(parse("AbA")) == MElement("AbA")
    assert match_M(parse("ababa")) == MElement("Family", 2)
    assert match_M(parse("B")) == MElement("Family", -1)
    assert match_M(parse("BAB")) == MElement("Family", -2)
    assert match_M(parse("ab")) is None
    for k in range(-10, 11):
        assert match_M(family(k)) == MElement("Family", k)


def test_reduce_examples():
    assert reduce_to_M(Word()) == (MElement("e"), 0)
    assert reduce_to_M(parse("b")) == (MElement("b"), 0)
    g = parse("abbAB")
    m, steps = reduce_to_M(g, 10 * len(g))
    assert m.word in [MElement(t).word for t in FINITE_M] or m.tag == "Family"


def test_reduce_cap():
    g = parse("abbAB")
    _, steps = reduce_to_M(g)
    if steps:
        with pytest.raises(TwistCapExceeded):
            reduce_to_M(g, cap=steps - 1)


def test_M_is_closed():
    for letters in FINITE_M.values():
        assert match_M(psi_bar(Word(letters))) is not None
    for k in range(-10, 11):
        assert match_M(psi_bar(family(k))) is not None


def test_two_cycles():
    for text in ("aaB", "AbA", "aB", "bb"):
        w = parse(text)
        assert psi_bar(w) != w
        assert psi_bar(psi_bar(w)) == w


@pytest.mark.parametrize("text,kind", [
    ("e", "RationalF"), ("bb", "RationalF"), ("aB", "RationalF"),
    ("b", "RationalG"), ("A", "RationalG"), ("aaB", "RationalG"), ("AbA", "RationalG"),
])
def test_classify_table(text, kind):
    c = classify(parse(text))
    assert str(c) == kind
    assert c.evidence


def test_classify_evidence_for_beta():
    c = classify(parse("b"))
    assert sorted([str(x) for x in cyc] for cyc in c.evidence) == [["-1/1", "1/1"], ["0/1", "1/0"]]


def test_classify_obstructed():
    c = classify(parse("ababa"))
    assert c.kind == "Obstructed" and c.k == 2 and str(c) == "Obstructed{2}"
    assert c.evidence == ()


@given(moduli_words)
def test_classify_constant_on_psi_orbits(g):
    a = classify(g, evidence=False)
    b = classify(psi_bar(g), evidence=False)
    assert (a.kind, a.k) == (b.kind, b.k)


@given(moduli_words)
def test_random_words_reach_M(g):
    reduce_to_M(g, 10 * max(1, len(g)))
