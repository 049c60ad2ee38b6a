"""The virtual endomorphism phi: H -> G, its extensions phi-bar and psi-bar,
and the action of phi on parabolic elements.

phi is computed by a transducer riding the coset automaton; the route through
Reidemeister-Schreier rewriting is kept as an independent check
(:func:`phi_via_rewrite`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import schreier
from .schreier import S1, SA, Sa, Sb, STEP, NotInH
from .words import Context, Word, WordError, reduce

__all__ = [
    "GENERATOR_IMAGES", "EMIT", "phi", "phi_via_rewrite", "phi_bar", "psi_bar",
    "section", "ParabolicForm", "phi_parabolic", "transition_prediction",
    "eliminate_conjugator", "ConjugatorCapExceeded", "NotInH",
]

GENERATOR_IMAGES: Dict[str, Word] = {
    "g1": Word((2,)),          # b a B   -> b
    "g2": Word((-2,)),         # b b A   -> B
    "g3": Word((-1, -2)),      # B A     -> A B
    "g4": Word((2,)),          # a a a   -> b
    "g5": Word((1,)),          # A b a   -> a
}

# output of the transducer on each transition
EMIT: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (S1, 1): (), (S1, -1): (), (S1, 2): (), (S1, -2): (-1, -2),
    (Sb, 1): (2,), (Sb, -1): (-2,), (Sb, 2): (-2,), (Sb, -2): (),
    (Sa, 1): (2,), (Sa, -1): (), (Sa, 2): (2, 1), (Sa, -2): (2,),
    (SA, 1): (), (SA, -1): (-2,), (SA, 2): (1,), (SA, -2): (-1,),
}

# start state -> coset label of phi-bar / letter prepended
_INVERSE_STEP_START = {S1: (), Sb: (2,), SA: (-1,), Sa: (1,)}


def _transduce(letters, start: int = S1) -> Tuple[int, Tuple[int, ...]]:
    s = start
    out: List[int] = []
    for x in letters:
        out.extend(EMIT[s, x])
        s = STEP[s, x]
    return s, reduce(out)


def _check(w: Word) -> Tuple[int, ...]:
    if w.context is not Context.MODULI:
        raise WordError("phi is defined on moduli-context words")
    return w.letters


def phi(w: Word) -> Word:
    end, out = _transduce(_check(w))
    if end != S1:
        raise NotInH(f"{w} is not in H")
    return Word(out, reduced=True)


def phi_via_rewrite(w: Word) -> Word:
    out = Word.identity()
    for name, sign in schreier.rewrite(w):
        img = GENERATOR_IMAGES[name]
        out = out * (img if sign > 0 else ~img)
    return out


def phi_bar(w: Word) -> Word:
    """phi(w), phi(b w), phi(A w) or phi(a w) for w in H, b^-1 H, a H, a^-1 H."""
    letters = _check(w)
    # x w is in H exactly when reading w from the state of x returns to S1;
    # that state is the one reached by reading w^-1.  Transitions out of S1
    # emit nothing, so phi(x w) is the transducer output of w from there.
    start = schreier.run(-x for x in reversed(letters))
    end, out = _transduce(letters, start)
    assert end == S1
    return Word(out, reduced=True)


_RIGHT_FIX = {"H": (), "Ha": (-1,), "HA": (1,), "Hb": (-2,)}


def psi_bar(g: Word) -> Word:
    """phi(g), a phi(g A), A phi(g a) or b phi(g B) for g in H, Ha, HA, Hb."""
    label = schreier.right_coset(g)
    x = Word(_RIGHT_FIX[label])
    return ~x * phi(g * x)


def section(w: Word) -> Word:
    """Letterwise lift s with phi(s(w)) == w: a -> A b a, b -> b a B."""
    images = {1: (-1, 2, 1), 2: (2, 1, -2)}
    out = []
    for x in _check(w):
        img = images[abs(x)]
        out.extend(img if x > 0 else tuple(-y for y in reversed(img)))
    return Word(out)


# ---------------------------------------------------------------------------
# parabolic elements

BASES = {"a": (1,), "b": (2,), "c": (-1, -2), "d": (-2, -1)}
_BASE_NAMES = {"a": "α", "b": "β", "c": "γ", "d": "δ"}


class ConjugatorCapExceeded(RuntimeError):
    def __init__(self, trace):
        super().__init__(f"conjugator not eliminated after {len(trace) - 1} steps")
        self.trace = trace


@dataclass(frozen=True)
class ParabolicForm:
    """The element ``w^-1 x^n w`` with base x in a, b, c (= A B), d (= B A)."""

    base: str
    exponent: int
    conjugator: Word

    def word(self) -> Word:
        x = Word(BASES[self.base]) ** self.exponent
        return ~self.conjugator * x * self.conjugator

    @classmethod
    def from_word(cls, u: Word) -> "ParabolicForm":
        """Canonical form: cyclically reduce, then read off the base power."""
        letters = _check(u)
        n = len(letters)
        i = 0
        while 2 * i + 1 < n and letters[i] == -letters[n - 1 - i]:
            i += 1
        core = letters[i:n - i]
        conj = Word(letters[n - i:], reduced=True)
        if not core:
            raise ValueError("identity has no parabolic form")
        for name, unit in BASES.items():
            for sign in (1, -1):
                piece = unit if sign > 0 else tuple(-y for y in reversed(unit))
                m, r = divmod(len(core), len(piece))
                if r == 0 and core == piece * m:
                    return cls(name, sign * m, conj)
        raise ValueError(f"{u} is not parabolic")

    def __str__(self) -> str:
        return f"{_BASE_NAMES[self.base]}^({self.exponent}·{self.conjugator})"


def phi_parabolic(p: ParabolicForm) -> ParabolicForm:
    if p.exponent % 3:
        raise ValueError("exponent must be divisible by 3")
    return ParabolicForm.from_word(phi(p.word()))


def transition_prediction(p: ParabolicForm) -> List[ParabolicForm]:
    """Candidate images of phi(x^(3n.w)) from the base-transition rules (k in {1, 3})."""
    if p.exponent % 3:
        raise ValueError("exponent must be divisible by 3")
    n = p.exponent // 3
    w = p.conjugator
    pb = phi_bar(w)
    coset = schreier.left_coset(w)
    if p.base == "a":
        return [ParabolicForm("b", k * n, pb) for k in (1, 3)]
    if p.base == "b":
        if coset == "AH":
            return [ParabolicForm("a", n, Word((-2,)) * pb)]
        return [ParabolicForm("a", k * n, pb) for k in (1, 3)]
    if p.base == "c":
        if coset in ("BH", "aH"):
            return [ParabolicForm("d", n, pb)]
        return [ParabolicForm("c", k * n, pb) for k in (1, 3)]
    return [ParabolicForm("c", k * n, pb) for k in (1, 3)]


def eliminate_conjugator(p: ParabolicForm, cap: int | None = None) -> List[ParabolicForm]:
    """Iterate phi on cubes until the conjugator vanishes; return the trace.

    At least one step is taken.

    Exponents are tracked formally: each step applies phi to the cube of the
    unit element and multiplies the running exponent by the resulting power.
    """
    if cap is None:
        cap = 10 * (len(p.conjugator) + 3)
    trace = [p]
    cur = p
    while True:
        # at least one step, so a bare base is carried to its image base
        img = phi_parabolic(ParabolicForm(cur.base, 3, cur.conjugator))
        cur = ParabolicForm(img.base, img.exponent * cur.exponent, img.conjugator)
        trace.append(cur)
        if cur.conjugator.is_identity():
            return trace
        if len(trace) > cap:
            raise ConjugatorCapExceeded(trace)
