"""Wreath recursions: elements of G wr S_d, recursion homomorphisms, tree
actions, restrictions and a bounded nucleus search.

Permutations compose left-first, (st)(i) = t(s(i)), and

    <<g_1..g_d>> s  *  <<h_1..h_d>> t  =  <<g_i h_s(i)>> st.

With this rule the tree action is (x v)^g = s(x) v^{g|x} and the restriction
g|x is the section at position x.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from . import schreier
from .virtualendo import phi
from .words import Context, Word, WordError, format_word, parse

__all__ = [
    "WreathError", "Perm", "WreathElement", "Recursion", "wreath_mul",
    "wreath_inv", "apply", "apply_letters", "restriction", "act_level",
    "perm_order", "Contracting", "Unknown", "nucleus_search",
    "phi_cross_check", "witness_power", "builtin", "BUILTINS", "load",
]

MAX_LEVEL = 12
MAX_CELLS = 4 ** 12


class WreathError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations

@dataclass(frozen=True)
class Perm:
    """Permutation of 1..d; images[i - 1] is the image of i."""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise WreathError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, d: int) -> "Perm":
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> "Perm":
        images = list(range(1, d + 1))
        seen = set()
        for cyc in cycles:
            for i in cyc:
                if not 1 <= i <= d or i in seen:
                    raise WreathError(f"bad cycle {tuple(cyc)} for degree {d}")
                seen.add(i)
            for i, j in zip(cyc, cyc[1:] + cyc[:1]):
                images[i - 1] = j
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, d: int) -> "Perm":
        text = text.strip()
        if text in ("", "id", "()", "1"):
            return cls.identity(d)
        if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\)\s*)+", text):
            raise WreathError(f"bad permutation {text!r}")
        cycles = [tuple(int(t) for t in body.split())
                  for body in re.findall(r"\(([^)]*)\)", text)]
        # a product of cycles, composed left-first
        out = cls.identity(d)
        for cyc in cycles:
            out = out * cls.from_cycles([cyc], d)
        return out

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise WreathError("degree mismatch")
        return Perm(tuple(other(self(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "id"


def perm_order(p: Perm) -> int:
    return lcm(*(len(c) for c in p.cycles())) if p.degree else 1


# ---------------------------------------------------------------------------
# wreath elements

@dataclass(frozen=True)
class WreathElement:
    sections: Tuple[Word, ...]
    perm: Perm

    def __post_init__(self):
        if len(self.sections) != self.perm.degree:
            raise WreathError("number of sections differs from the degree")

    @property
    def degree(self) -> int:
        return self.perm.degree

    @classmethod
    def identity(cls, d: int, context: Context) -> "WreathElement":
        return cls(tuple(Word.identity(context) for _ in range(d)), Perm.identity(d))

    def is_identity(self) -> bool:
        return self.perm.is_identity() and all(s.is_identity() for s in self.sections)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_mul(self, other)

    def __str__(self) -> str:
        return "<<" + ", ".join(str(s) for s in self.sections) + ">> " + str(self.perm)


def wreath_mul(u: WreathElement, v: WreathElement) -> WreathElement:
    if u.degree != v.degree:
        raise WreathError("degree mismatch")
    secs = tuple(u.sections[i] * v.sections[u.perm(i + 1) - 1] for i in range(u.degree))
    return WreathElement(secs, u.perm * v.perm)


def wreath_inv(u: WreathElement) -> WreathElement:
    # k_{s(i)} = g_i^-1
    inv = u.perm.inverse()
    secs = tuple(~u.sections[inv(j + 1) - 1] for j in range(u.degree))
    return WreathElement(secs, inv)


# ---------------------------------------------------------------------------
# recursions

@dataclass
class Recursion:
    name: str
    degree: int
    context: Context
    images: Dict[int, WreathElement]                 # base letter -> image
    _cache: Dict[Tuple[int, ...], WreathElement] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for base in self.context.bases:
            if base not in self.images:
                raise WreathError(f"missing image for generator {format_word((base,))}")
        self._signed = {}
        for base, el in self.images.items():
            if el.degree != self.degree:
                raise WreathError("image degree differs from the recursion degree")
            self._signed[base] = (tuple(s.letters for s in el.sections), el.perm)
            inv = wreath_inv(el)
            self._signed[-base] = (tuple(s.letters for s in inv.sections), inv.perm)

    @property
    def generators(self) -> List[Word]:
        return [Word((b,), self.context) for b in self.context.bases]

    def word(self, text: str) -> Word:
        return parse(text, self.context)

    def __str__(self) -> str:
        lines = [f"degree {self.degree}", f"context {self.context.value}"]
        for base in sorted(self.images):
            el = self.images[base]
            secs = ", ".join(str(s) for s in el.sections)
            perm = str(el.perm)
            lines.append(f"gen {format_word((base,))} = <{secs}> {'' if perm == 'id' else perm}".rstrip())
        return "\n".join(lines)


def apply_letters(r: Recursion, letters: Sequence[int]) -> WreathElement:
    """Product of the generator images letter by letter.

    Unlike :func:`apply` this accepts notation letters (such as d in the
    dynamical context) as long as the recursion declares an image for them.
    """
    d = r.degree
    stacks: List[List[int]] = [[] for _ in range(d)]
    perm = list(range(1, d + 1))          # perm[i-1] = accumulated image of i
    for x in letters:
        try:
            secs, p = r._signed[x]
        except KeyError:
            raise WreathError(f"no image for letter {format_word((x,))} in {r.name}") from None
        for i in range(d):
            stack = stacks[i]
            for y in secs[perm[i] - 1]:
                if stack and stack[-1] == -y:
                    stack.pop()
                else:
                    stack.append(y)
        perm = [p(j) for j in perm]
    return WreathElement(tuple(Word(s, r.context, reduced=True) for s in stacks), Perm(tuple(perm)))


def apply(r: Recursion, w: Word) -> WreathElement:
    if w.context is not r.context:
        raise WreathError(f"word context {w.context.value} differs from recursion context {r.context.value}")
    el = r._cache.get(w.letters)
    if el is None:
        el = apply_letters(r, w.letters)
        if len(r._cache) < 100_000:
            r._cache[w.letters] = el
    return el


def restriction(r: Recursion, w: Word, address: Sequence[int]) -> Word:
    """w restricted to the vertex ``address`` (letters in 1..d)."""
    g = w
    for x in address:
        if not 1 <= x <= r.degree:
            raise WreathError(f"bad address letter {x} for degree {r.degree}")
        g = apply(r, g).sections[x - 1]
    return g


def act_level(r: Recursion, w: Word, n: int) -> Perm:
    """Action of w on the words of length n, indexed lexicographically from 1."""
    d = r.degree
    if n < 0 or n > MAX_LEVEL or d ** n > MAX_CELLS:
        raise WreathError(f"level {n} too large (limit {MAX_LEVEL}, at most {MAX_CELLS} vertices)")
    memo: Dict[Tuple[Tuple[int, ...], int], List[int]] = {}

    def level(g: Word, k: int) -> List[int]:
        # 0-indexed images of the d^k vertices
        if k == 0:
            return [0]
        key = (g.letters, k)
        if key in memo:
            return memo[key]
        if g.is_identity():
            out = list(range(d ** k))
        else:
            el = apply(r, g)
            size = d ** (k - 1)
            out = [0] * (d * size)
            for x in range(d):
                sub = level(el.sections[x], k - 1)
                offset = (el.perm(x + 1) - 1) * size
                base = x * size
                for v in range(size):
                    out[base + v] = offset + sub[v]
        memo[key] = out
        return out

    return Perm(tuple(i + 1 for i in level(w, n)))


# ---------------------------------------------------------------------------
# nucleus search

@dataclass(frozen=True)
class Contracting:
    nucleus: frozenset          # stable set N, containing e and S and S^-1
    core: frozenset             # elements lying on restriction cycles
    rounds: int


@dataclass(frozen=True)
class Unknown:
    rounds: int
    size: int
    reason: str
    longest: Tuple[Word, ...]
    max_length: int


def _restriction_closure(r: Recursion, start: Iterable[Word], limit: int):
    graph = nx.DiGraph()
    todo = list(dict.fromkeys(start))
    seen = set(todo)
    graph.add_nodes_from(todo)
    while todo:
        g = todo.pop()
        for s in apply(r, g).sections:
            graph.add_edge(g, s)
            if s not in seen:
                seen.add(s)
                todo.append(s)
                if len(seen) > limit:
                    return None, seen
    return graph, seen


def nucleus_search(r: Recursion, max_size: int = 200,
                   max_rounds: int = 50) -> Union[Contracting, Unknown]:
    """Bounded search for a finite N with ((S u N)^2)|_{X^k} inside N.

    Each round closes (S u N)^2 under restriction.  When that closure is
    finite every long restriction path ends on a cycle, so the cyclic core
    absorbs all deep restrictions; N is replaced by S u S^-1 u {e} u core
    until it stops changing.
    """
    gens = r.generators
    base = {Word.identity(r.context)} | set(gens) | {~g for g in gens}
    nucleus = set(base)
    for rnd in range(1, max_rounds + 1):
        pool = list(nucleus | set(gens))
        products = {u * v for u in pool for v in pool}
        graph, seen = _restriction_closure(r, products, max_size)
        if graph is None:
            return _unknown(rnd, seen, f"restriction closure exceeded {max_size} elements")
        core = set()
        for comp in nx.strongly_connected_components(graph):
            g = next(iter(comp))
            if len(comp) > 1 or graph.has_edge(g, g):
                core |= comp
        new = base | core
        if len(new) > max_size:
            return _unknown(rnd, new, f"candidate nucleus exceeded {max_size} elements")
        if new == nucleus:
            return Contracting(frozenset(nucleus), frozenset(core), rnd)
        nucleus = new
    return _unknown(max_rounds, nucleus, f"no stable set within {max_rounds} rounds")


def _unknown(rounds: int, elements, reason: str) -> Unknown:
    ranked = sorted(elements, key=lambda w: (-len(w), w.letters))
    return Unknown(rounds, len(elements), reason, tuple(ranked[:5]),
                   len(ranked[0]) if ranked else 0)


# ---------------------------------------------------------------------------
# checks against the virtual endomorphism

def phi_cross_check(w: Word, r: Optional[Recursion] = None) -> bool:
    """The first-coordinate virtual endomorphism of the moduli recursion is phi."""
    if not schreier.in_H(w):
        raise schreier.NotInH(f"{w} is not in H")
    r = r or builtin("phi-moduli")
    el = apply(r, w)
    return el.perm(1) == 1 and el.sections[0] == phi(w)


def witness_power(n: int, r: Optional[Recursion] = None) -> bool:
    """Phi((ba)^{3n}) == <<(ba)^n, (ba)^n, (ba)^{3n}, (ab)^n>> id."""
    r = r or builtin("phi-moduli")
    ba, ab = Word((2, 1)), Word((1, 2))
    expected = WreathElement((ba ** n, ba ** n, ba ** (3 * n), ab ** n), Perm.identity(4))
    return apply(r, ba ** (3 * n)) == expected


# ---------------------------------------------------------------------------
# text format and built-ins

_CONTEXTS = {c.value: c for c in Context}
_GEN_LINE = re.compile(r"gen\s+([a-d])\s*=\s*<([^>]*)>\s*(.*)")


def load(text: str, name: str = "recursion") -> Recursion:
    """Parse the recursion text format.

    ``degree d`` header, optional ``context moduli|dynamical|free4`` (default
    free4), then lines ``gen a = <e, e, b> (1 3)``.  ``#`` starts a comment.
    """
    degree = None
    context = Context.FREE4
    raw: List[Tuple[str, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] == "degree" and len(head) == 2 and head[1].isdigit():
            degree = int(head[1])
        elif head[0] == "context" and len(head) == 2 and head[1] in _CONTEXTS:
            context = _CONTEXTS[head[1]]
        else:
            m = _GEN_LINE.fullmatch(line)
            if not m:
                raise WreathError(f"line {lineno}: cannot parse {line!r}")
            raw.append(m.groups())
    if degree is None or degree < 1:
        raise WreathError("missing 'degree d' header")
    images: Dict[int, WreathElement] = {}
    for gen, secs, perm in raw:
        base = "abcd".index(gen) + 1
        if base in images:
            raise WreathError(f"generator {gen} given twice")
        words = [s.strip() for s in secs.split(",")]
        if len(words) != degree:
            raise WreathError(f"generator {gen}: expected {degree} sections, got {len(words)}")
        try:
            sections = tuple(parse(s, context) for s in words)
        except WordError as exc:
            raise WreathError(f"generator {gen}: {exc}") from None
        images[base] = WreathElement(sections, Perm.parse(perm, degree))
    return Recursion(name, degree, context, images)


_BUILTIN_TEXT = {
    "phi-moduli": """
        degree 4
        context moduli
        gen a = <ba, b, A, e> (1 3 4)
        gen b = <B, ba, e, a> (1 2 3)
    """,
    "phi-f": """
        degree 3
        context dynamical
        gen a = <e, e, b> (1 3)
        gen b = <B, e, CD> (1 3)
        gen c = <e, c, e> (2 3)
        gen d = <d, e, e> (1 2)
    """,
    "phi-g": """
        degree 3
        context free4
        gen a = <e, BDC, e> (1 2)
        gen b = <c, e, e> (1 2)
        gen c = <e, db, D> (2 3)
        gen d = <e, d, e> (2 3)
    """,
    "phi-f-b2": """
        degree 3
        context free4
        gen a = <e, e, b> (1 3)
        gen b = <a, e, e> (1 2)
        gen c = <e, c, e> (2 3)
        gen d = <e, c, AB> (2 3)
    """,
}

BUILTINS = tuple(_BUILTIN_TEXT)
_LOADED: Dict[str, Recursion] = {}


def builtin(name: str) -> Recursion:
    if name not in _BUILTIN_TEXT:
        raise WreathError(f"unknown recursion {name!r}; choose from {', '.join(BUILTINS)}")
    if name not in _LOADED:
        _LOADED[name] = load(_BUILTIN_TEXT[name], name)
    return _LOADED[name]
