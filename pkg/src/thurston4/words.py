"""Free-group words over the twist generators.

Letters are nonzero ints: ``1, 2, 3, 4`` stand for alpha, beta, gamma, delta
and a negative value is the inverse letter.  The text syntax uses ``a b c d``
for generators and ``A B C D`` for their inverses; ``e`` is the identity.

Which bases are actually stored depends on the context:

* ``MODULI``    free group <a, b>;  c := A B,  d := B A on input
* ``DYNAMICAL`` free group <a, b, c>;  d := B C A  (from a c b d = 1)
* ``FREE4``     free group on a, b, c, d with no relation
"""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence, Tuple

__all__ = [
    "Context", "Word", "WordError", "reduce", "concat", "invert",
    "conjugate", "power", "parse", "format_word",
]

CHARS = {"a": 1, "b": 2, "c": 3, "d": 4}
NAMES = {v: k for k, v in CHARS.items()}


class WordError(ValueError):
    pass


class Context(Enum):
    MODULI = "moduli"
    DYNAMICAL = "dynamical"
    FREE4 = "free4"

    @property
    def bases(self) -> Tuple[int, ...]:
        return {"moduli": (1, 2), "dynamical": (1, 2, 3), "free4": (1, 2, 3, 4)}[self.value]


# notation letters expanded on input, per context
_EXPANSIONS = {
    Context.MODULI: {3: (-1, -2), 4: (-2, -1)},
    Context.DYNAMICAL: {4: (-2, -3, -1)},
    Context.FREE4: {},
}


def reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    """Freely reduce a letter sequence."""
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """A freely reduced word; immutable and hashable."""

    __slots__ = ("letters", "context")

    def __init__(self, letters: Iterable[int] = (), context: Context = Context.MODULI,
                 *, reduced: bool = False):
        letters = tuple(letters) if reduced else reduce(letters)
        allowed = context.bases
        for x in letters:
            if abs(x) not in allowed:
                raise WordError(f"letter {_letter_text(x)} not stored in {context.value} context")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "context", context)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (_rebuild, (self.letters, self.context))

    @classmethod
    def identity(cls, context: Context = Context.MODULI) -> "Word":
        return cls((), context, reduced=True)

    @classmethod
    def parse(cls, text: str, context: Context = Context.MODULI) -> "Word":
        return parse(text, context)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters and self.context is other.context
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.letters, self.context))

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, {self.context.value})"


def _rebuild(letters, context):
    return Word(letters, context, reduced=True)


def _letter_text(x: int) -> str:
    ch = NAMES[abs(x)]
    return ch if x > 0 else ch.upper()


def concat(u: Word, v: Word) -> Word:
    if u.context is not v.context:
        raise WordError(f"context mismatch: {u.context.value} vs {v.context.value}")
    a, b = u.letters, v.letters
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i] == -b[i]:
        i += 1
    return Word(a[:len(a) - i] + b[i:], u.context, reduced=True)


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)), w.context, reduced=True)


def conjugate(g: Word, w: Word) -> Word:
    """Return ``w^-1 g w``."""
    return concat(concat(invert(w), g), w)


def power(g: Word, n: int) -> Word:
    if n < 0:
        g, n = invert(g), -n
    result = Word.identity(g.context)
    base = g
    while n:
        if n & 1:
            result = concat(result, base)
        base = concat(base, base)
        n >>= 1
    return result


def parse(text: str, context: Context = Context.MODULI) -> Word:
    """Parse ``a/A/b/B/c/C/d/D`` text; ``e``, ``1``, spaces and ``*`` are ignored."""
    expand = _EXPANSIONS[context]
    letters = []
    for ch in text.strip():
        if ch in " *·" or ch in "e1":
            continue
        base = CHARS.get(ch.lower())
        if base is None:
            raise WordError(f"invalid character {ch!r} in word {text!r}")
        sign = 1 if ch.islower() else -1
        if base in expand:
            seq = expand[base]
            letters.extend(seq if sign > 0 else tuple(-x for x in reversed(seq)))
        elif base in context.bases:
            letters.append(sign * base)
        else:
            raise WordError(f"base {ch!r} not allowed in {context.value} context")
    return Word(letters, context)


def format_word(w: Word | Sequence[int]) -> str:
    letters = w.letters if isinstance(w, Word) else w
    if not letters:
        return "e"
    return "".join(_letter_text(x) for x in letters)
