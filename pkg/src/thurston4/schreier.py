"""Coset automaton of the index-4 subgroup H < <a, b> and Reidemeister-Schreier rewriting.

States are the right cosets H, Hb, Ha, HA (row labels 1, b, a, a^-1 of the
gamma table).  Reading a word from ``S1`` lands on the coset ``H w``.
"""
from __future__ import annotations

from enum import IntEnum
from typing import Dict, List, Tuple

from .words import Context, Word, WordError, reduce

__all__ = [
    "CosetState", "step", "run", "coset_of", "in_H", "gamma", "H_GENERATORS",
    "rewrite", "rewrite_factors", "expand_rewrite", "left_coset", "right_coset",
    "NotInH",
]


class NotInH(WordError):
    pass


class CosetState(IntEnum):
    S1 = 0
    Sb = 1
    Sa = 2
    SA = 3


S1, Sb, Sa, SA = CosetState

# (state, letter) -> state, letters a=1, b=2, negatives are inverses
STEP: Dict[Tuple[int, int], int] = {
    (S1, 1): Sa, (S1, -1): SA, (S1, 2): Sb, (S1, -2): Sa,
    (Sb, 1): Sb, (Sb, -1): Sb, (Sb, 2): Sa, (Sb, -2): S1,
    (Sa, 1): SA, (Sa, -1): S1, (Sa, 2): S1, (Sa, -2): Sb,
    (SA, 1): S1, (SA, -1): Sa, (SA, 2): SA, (SA, -2): SA,
}

# transversal element of each state
REP = {S1: (), Sb: (2,), Sa: (1,), SA: (-1,)}

H_GENERATORS: Dict[str, Word] = {
    "g1": Word((2, 1, -2)),        # b a B
    "g2": Word((2, 2, -1)),        # b b A
    "g3": Word((-2, -1)),          # B A
    "g4": Word((1, 1, 1)),         # a a a
    "g5": Word((-1, 2, 1)),        # A b a
}


def step(s: int, letter: int) -> CosetState:
    return CosetState(STEP[s, letter])


def run(letters, start: int = S1) -> int:
    s = start
    for x in letters:
        s = STEP[s, x]
    return s


def _moduli(w: Word) -> Word:
    if w.context is not Context.MODULI:
        raise WordError("coset automaton needs a moduli-context word")
    return w


def coset_of(w: Word) -> CosetState:
    return CosetState(run(_moduli(w).letters))


def in_H(w: Word) -> bool:
    return run(_moduli(w).letters) == S1


def gamma(t: int, letter: int) -> Word:
    """gamma(t, s) = t s (rep of ts)^-1, an element of H."""
    rep_next = REP[STEP[t, letter]]
    return Word(REP[t] + (letter,) + tuple(-x for x in reversed(rep_next)))


def _generator_lookup() -> Dict[Tuple[int, ...], Tuple[str, int]]:
    table = {}
    for name, g in H_GENERATORS.items():
        table[g.letters] = (name, 1)
        table[(~g).letters] = (name, -1)
    return table


_GEN_OF = _generator_lookup()


def rewrite_factors(w: Word) -> List[Word]:
    """The raw gamma factors gamma(1, s1) gamma(bar s1, s2) ..., identities included."""
    s = S1
    out = []
    for x in _moduli(w).letters:
        out.append(gamma(s, x))
        s = STEP[s, x]
    if s != S1:
        raise NotInH(f"{w} is not in H")
    return out


def rewrite(w: Word) -> List[Tuple[str, int]]:
    """Express w in H as a product of signed H generators."""
    out = []
    for f in rewrite_factors(w):
        if f.letters:
            out.append(_GEN_OF[f.letters])
    return out


def expand_rewrite(factors: List[Tuple[str, int]]) -> Word:
    out = Word.identity()
    for name, sign in factors:
        g = H_GENERATORS[name]
        out = out * (g if sign > 0 else ~g)
    return out


# left cosets: label -> letter x with x w in H (x = inverse of the representative)
_LEFT = (("H", ()), ("BH", (2,)), ("aH", (-1,)), ("AH", (1,)))
# right cosets: label -> letter x with w x in H
_RIGHT = (("H", ()), ("Ha", (-1,)), ("HA", (1,)), ("Hb", (-2,)))


def left_coset(w: Word) -> str:
    """One of 'H', 'BH', 'aH', 'AH' (H, b^-1 H, a H, a^-1 H)."""
    letters = _moduli(w).letters
    hits = [label for label, x in _LEFT if run(reduce(x + letters)) == S1]
    if len(hits) != 1:
        raise AssertionError(f"left coset of {w} not unique: {hits}")
    return hits[0]


def right_coset(w: Word) -> str:
    """One of 'H', 'Ha', 'HA', 'Hb'."""
    s = coset_of(w)
    hits = [label for label, x in _RIGHT if run(x, s) == S1]
    if len(hits) != 1:
        raise AssertionError(f"right coset of {w} not unique: {hits}")
    return hits[0]
