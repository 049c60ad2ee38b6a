"""Even continued-fraction machine: write p/q = M . * with * in {0/1, 1/0, 1/1}.

The matrix word M is recorded in the order the letters are appended, so that
``mat_product(mat_letters) . terminal == x``.  Reading it backwards through
A -> a, B -> b gives the fundamental-group word w with ``terminal . w == x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .projective import INFINITY, ZERO, ExtRational, act, mat_product
from .words import Context, Word, reduce

__all__ = ["Decomposition", "decompose", "recompose", "stabilizer", "cf_labels",
           "decompose_pair", "format_mat_letters"]

# step tags, by the interval the current value lies in
NEG_BIG = "(-inf,-1)"
NEG_SMALL = "(-1,0)"
POS_SMALL = "(0,1)"
POS_BIG = "(1,inf)"
MINUS_ONE_TAG = "-1/1"

_TERMINALS = {(0, 1), (1, 0), (1, 1)}


@dataclass(frozen=True)
class Decomposition:
    terminal: ExtRational
    mat_letters: Tuple[int, ...]
    labels: Tuple[str, ...]

    @property
    def fund_word(self) -> Word:
        return Word(reversed(self.mat_letters), Context.MODULI)


def decompose_pair(p: int, q: int) -> Tuple[Tuple[int, int], list, list]:
    """Run the machine on a reduced pair; returns (terminal, mat letters, tags)."""
    letters = []
    tags = []
    while (p, q) not in _TERMINALS:
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
            continue
        if p == -q:
            q = p = 1
            letters.append(1)
            tags.append(MINUS_ONE_TAG)
        elif p < -q:
            p += 2 * q
            letters.append(-2)
            tags.append(NEG_BIG)
        elif p < 0:
            q += 2 * p
            letters.append(1)
            tags.append(NEG_SMALL)
        elif p < q:
            q -= 2 * p
            letters.append(-1)
            tags.append(POS_SMALL)
        else:
            p -= 2 * q
            letters.append(2)
            tags.append(POS_BIG)
    return (p, q), letters, tags


def decompose(x: ExtRational) -> Decomposition:
    (p, q), letters, tags = decompose_pair(x.p, x.q)
    return Decomposition(ExtRational(p, q), tuple(letters), tuple(tags))


def recompose(d: Decomposition) -> ExtRational:
    return act(mat_product(d.mat_letters), d.terminal)


def stabilizer(x: ExtRational) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Return (w, v), matrix-letter words with w v w^-1 parabolic fixing x.

    v is A, B or B^-1 A^-1, the fixer of 0/1, 1/0 or -1/1 respectively.
    A 1/1 terminal is moved to -1/1 = A . 1/1 by appending A^-1 to w.
    """
    d = decompose(x)
    if d.terminal == ZERO:
        return d.mat_letters, (1,)
    if d.terminal == INFINITY:
        return d.mat_letters, (2,)
    return reduce(d.mat_letters + (-1,)), (-2, -1)


def cf_labels(d: Decomposition) -> str:
    return "[" + ";".join(d.labels + (str(d.terminal),)) + "]"


_MAT_TEXT = {1: "A", -1: "A⁻¹", 2: "B", -2: "B⁻¹"}


def format_mat_letters(letters) -> str:
    return " ".join(_MAT_TEXT[x] for x in letters) if letters else "I"
