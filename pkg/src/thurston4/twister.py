"""Twisting classifier: reduce a mapping-class word into the attractor set M
of psi_bar and name the Thurston class of f.g.

M consists of e, b, A, aaB, AbA, aB, bb and the family a(ba)^k, k in Z.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .boundary import attractor_scan
from .projective import ExtRational
from .virtualendo import psi_bar
from .words import Context, Word, WordError

__all__ = [
    "MElement", "TwistClass", "TwistCapExceeded", "TwistEvidenceError",
    "FINITE_M", "family", "match_M", "reduce_to_M", "classify",
    "RATIONAL_F", "RATIONAL_G",
]

FINITE_M = {
    "e": (),
    "b": (2,),
    "A": (-1,),
    "aaB": (1, 1, -2),
    "AbA": (-1, 2, -1),
    "aB": (1, -2),
    "bb": (2, 2),
}
RATIONAL_F = frozenset({"e", "bb", "aB"})
RATIONAL_G = frozenset({"b", "A", "aaB", "AbA"})


class TwistCapExceeded(RuntimeError):
    pass


class TwistEvidenceError(RuntimeError):
    """Attractor evidence disagrees with the looked-up class."""


@dataclass(frozen=True)
class MElement:
    tag: str                    # a FINITE_M key or "Family"
    k: Optional[int] = None

    @property
    def word(self) -> Word:
        if self.tag == "Family":
            return family(self.k)
        return Word(FINITE_M[self.tag])

    def __str__(self) -> str:
        return f"Family({self.k}) = {self.word}" if self.tag == "Family" else self.tag


def family(k: int) -> Word:
    return Word((1,)) * Word((2, 1)) ** k


def match_M(w: Word) -> Optional[MElement]:
    """The element of M equal to w, or None."""
    for tag, letters in FINITE_M.items():
        if w.letters == letters:
            return MElement(tag)
    n = len(w)
    if n % 2 == 1:
        # |a (ba)^k| = 2k + 1 for k >= 0 and -2k - 1 for k < 0
        for k in ((n - 1) // 2, -(n + 1) // 2):
            if family(k) == w:
                return MElement("Family", k)
    return None


def reduce_to_M(g: Word, cap: Optional[int] = None) -> Tuple[MElement, int]:
    """Iterate psi_bar until the value lies in M; returns (element, steps)."""
    if g.context is not Context.MODULI:
        raise WordError("twisting words live in the moduli context")
    if cap is None:
        cap = 10 * len(g) + 10
    w = g
    for steps in range(cap + 1):
        m = match_M(w)
        if m is not None:
            return m, steps
        w = psi_bar(w)
    raise TwistCapExceeded(f"{g} did not reach M within {cap} psi_bar steps")


@dataclass(frozen=True)
class TwistClass:
    kind: str                                   # RationalF | RationalG | Obstructed
    representative: MElement
    steps: int
    evidence: Tuple[Tuple[ExtRational, ...], ...] = ()

    @property
    def k(self) -> Optional[int]:
        return self.representative.k if self.kind == "Obstructed" else None

    def __str__(self) -> str:
        return f"Obstructed{{{self.k}}}" if self.kind == "Obstructed" else self.kind


def _check_evidence(kind: str, cycles) -> None:
    fixed = [c for c in cycles if len(c) == 1]
    two = [c for c in cycles if len(c) == 2]
    if kind == "RationalF":
        ok = len(fixed) == 1 and len(two) == 1 and len(cycles) == 2
    else:
        ok = len(two) >= 2
    if not ok:
        shown = ", ".join("[" + ",".join(map(str, c)) + "]" for c in cycles)
        raise TwistEvidenceError(f"{kind} expected, attractor shows {shown}")


def classify(g: Word, evidence: bool = True, height: int = 50, jobs: int = 1,
             cap: Optional[int] = None) -> TwistClass:
    """Thurston class of f.g.

    For unobstructed classes the cycle set of sigma for f.m (m the M
    representative) over seeds of height <= ``height`` is attached and
    checked: f-type maps show one fixed point and one 2-cycle, g-type maps at
    least two 2-cycles.
    """
    m, steps = reduce_to_M(g, cap)
    if m.tag == "Family":
        return TwistClass("Obstructed", m, steps)
    kind = "RationalF" if m.tag in RATIONAL_F else "RationalG"
    cycles: Tuple[Tuple[ExtRational, ...], ...] = ()
    if evidence:
        summary = attractor_scan(height, twist=m.word, jobs=jobs)
        if summary.exceptions:
            raise TwistEvidenceError(f"attractor scan had exceptions: {summary.exceptions[:3]}")
        cycles = tuple(summary.cycle_values())
        _check_evidence(kind, cycles)
    return TwistClass(kind, m, steps, cycles)
