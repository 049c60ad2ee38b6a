"""Extended rationals, P Gamma(2) matrices and the two actions on them.

P Gamma(2) acts on the left by Moebius maps.  The fundamental group acts on
the right through the anti-isomorphism A -> a, B -> b, which reverses the
order of letters: ``x . w1 w2 ... wn == M(wn) ... M(w1) . x``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterable, Tuple

from .words import Context, Word

__all__ = [
    "ExtRational", "MobiusMat", "ParityClass", "ProjectiveError",
    "INFINITY", "ZERO", "ONE", "MINUS_ONE",
    "act", "gen_matrix", "mat_product", "word_to_matrix", "right_act",
    "right_act_letters", "is_parabolic", "fixed_point", "parity_class",
    "slope_to_boundary",
]


class ProjectiveError(ValueError):
    pass


def _normalize(p: int, q: int) -> Tuple[int, int]:
    if p == 0 and q == 0:
        raise ProjectiveError("0/0 is not a point of the projective line")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


@dataclass(frozen=True)
class ExtRational:
    """Reduced p/q with q >= 0; infinity is stored as 1/0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = _normalize(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "ExtRational":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*", text)
        if not m:
            raise ProjectiveError(f"cannot parse fraction {text!r}")
        q = int(m.group(2)) if m.group(2) is not None else 1
        return cls(int(m.group(1)), q)

    @property
    def height(self) -> int:
        return max(abs(self.p), self.q)

    @property
    def pair(self) -> Tuple[int, int]:
        return self.p, self.q

    def reciprocal(self) -> "ExtRational":
        return ExtRational(self.q, self.p)

    def __neg__(self) -> "ExtRational":
        return ExtRational(-self.p, self.q)

    def __lt__(self, other: "ExtRational") -> bool:
        # finite values by size, then 1/0
        if self.q == 0 or other.q == 0:
            return self.q != 0 and other.q == 0
        return self.p * other.q < other.p * self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"ExtRational({self.p}/{self.q})"


INFINITY = ExtRational(1, 0)
ZERO = ExtRational(0, 1)
ONE = ExtRational(1, 1)
MINUS_ONE = ExtRational(-1, 1)


class ParityClass(Enum):
    OO = "OO"
    OE = "OE"
    EO = "EO"


@dataclass(frozen=True)
class MobiusMat:
    """Integer matrix [[a, b], [c, d]] of determinant 1, taken mod +-I."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ProjectiveError(f"determinant of {self.rows} is not 1")
        first = next(x for x in (self.a, self.b, self.c, self.d) if x)
        if first < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @classmethod
    def identity(cls) -> "MobiusMat":
        return cls(1, 0, 0, 1)

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def in_gamma2(self) -> bool:
        return self.a % 2 == 1 and self.d % 2 == 1 and self.b % 2 == 0 and self.c % 2 == 0

    def __matmul__(self, o: "MobiusMat") -> "MobiusMat":
        return MobiusMat(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                         self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "MobiusMat":
        return MobiusMat(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self == MobiusMat.identity()

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


_GEN = {
    1: MobiusMat(1, 0, -2, 1),    # A
    -1: MobiusMat(1, 0, 2, 1),    # A^-1
    2: MobiusMat(1, 2, 0, 1),     # B
    -2: MobiusMat(1, -2, 0, 1),   # B^-1
}


def gen_matrix(letter: int | str) -> MobiusMat:
    """Matrix of a generator letter: a/1 -> A, A/-1 -> A^-1, b/2 -> B, B/-2 -> B^-1."""
    if isinstance(letter, str):
        letter = {"a": 1, "A": -1, "b": 2, "B": -2}.get(letter, 0)
    try:
        return _GEN[letter]
    except KeyError:
        raise ProjectiveError(f"no matrix for letter {letter!r}") from None


def mat_product(letters: Iterable[int]) -> MobiusMat:
    """Left-to-right product of matrix letters."""
    m = MobiusMat.identity()
    for x in letters:
        m = m @ gen_matrix(x)
    return m


def word_to_matrix(w: Word) -> MobiusMat:
    if w.context is not Context.MODULI:
        raise ProjectiveError("only moduli-context words map to P Gamma(2)")
    return mat_product(reversed(w.letters))


def act(m: MobiusMat, x: ExtRational) -> ExtRational:
    return ExtRational(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q)


def right_act_letters(p: int, q: int, letters: Iterable[int]) -> Tuple[int, int]:
    """Apply the right action letter by letter to the pair (p, q), unnormalized."""
    for x in letters:
        if x == 1:
            q -= 2 * p
        elif x == -1:
            q += 2 * p
        elif x == 2:
            p += 2 * q
        else:
            p -= 2 * q
    return p, q


def right_act(x: ExtRational, w: Word) -> ExtRational:
    if w.context is not Context.MODULI:
        raise ProjectiveError("only moduli-context words act on the boundary")
    return ExtRational(*right_act_letters(x.p, x.q, w.letters))


def is_parabolic(m: MobiusMat) -> bool:
    return m.trace ** 2 == 4


def fixed_point(m: MobiusMat) -> ExtRational:
    if not is_parabolic(m) or m.is_identity():
        raise ProjectiveError(f"{m} is not a nontrivial parabolic")
    if m.c == 0:
        return INFINITY
    return ExtRational(m.a - m.d, 2 * m.c)


def parity_class(x: ExtRational) -> ParityClass:
    return {(1, 1): ParityClass.OO, (1, 0): ParityClass.OE, (0, 1): ParityClass.EO}[(x.p % 2, x.q % 2)]


def slope_to_boundary(x: ExtRational) -> ExtRational:
    """Slope p/q of a curve <-> boundary point -p/q (an involution)."""
    return -x
