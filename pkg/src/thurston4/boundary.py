"""The boundary pullback map sigma on extended rationals, its twisted
versions, orbits, attractor scans and preimage families.

sigma(* . w) = swap(*) . phi_bar(w), where p/q = * . w comes from the even
continued-fraction machine and swap exchanges 0/1 and 1/0 and sends 1/1 to
-1/1.
"""
from __future__ import annotations

import functools
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import schreier
from .cf import decompose, decompose_pair, stabilizer
from .projective import (INFINITY, MINUS_ONE, ONE, ZERO, ExtRational, act,
                         fixed_point, right_act, right_act_letters, word_to_matrix)
from .virtualendo import EMIT, phi, section
from .schreier import STEP, S1
from .words import Word

__all__ = [
    "sigma", "sigma_pair", "sigma_via_stabilizer", "sigma_twisted", "swap",
    "OrbitReport", "OrbitCapExceeded", "orbit", "AttractorSummary",
    "attractor_scan", "reduced_fractions", "preimage_family",
    "verify_functional_equation", "plot_rows",
]

_SWAP = {(0, 1): (1, 0), (1, 0): (0, 1), (1, 1): (-1, 1)}


def swap(x: ExtRational) -> ExtRational:
    return ExtRational(*_SWAP[x.pair])


def _phi_bar_letters(letters: Sequence[int]) -> List[int]:
    # same computation as virtualendo.phi_bar, on raw letters
    s = S1
    for x in reversed(letters):
        s = STEP[s, -x]
    out: List[int] = []
    for x in letters:
        out.extend(EMIT[s, x])
        s = STEP[s, x]
    return out


def sigma_pair(p: int, q: int) -> Tuple[int, int]:
    """sigma on a reduced pair (q >= 0), returning a reduced pair."""
    terminal, mat, _ = decompose_pair(p, q)
    fund = mat[::-1]
    image = _phi_bar_letters(fund)
    p, q = right_act_letters(*_SWAP[terminal], image)
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def sigma(x: ExtRational) -> ExtRational:
    return ExtRational(*sigma_pair(x.p, x.q))


def sigma_via_stabilizer(x: ExtRational) -> ExtRational:
    """Fixed point of phi applied to the cube of the Dehn twist about x."""
    w, v = stabilizer(x)
    # fundamental-group image of the matrix word w v w^-1, order reversed
    conj = Word(reversed(w))
    twist = ~conj * Word(reversed(v)) * conj
    cube = twist ** 3
    if not schreier.in_H(cube):
        raise AssertionError(f"cube of the twist about {x} is not in H")
    image = word_to_matrix(phi(cube))
    return fixed_point(image)


def sigma_twisted(h: Word, x: ExtRational) -> ExtRational:
    """Pullback for f.h: sigma(M_h^-1 . x)."""
    if h.is_identity():
        return sigma(x)
    return sigma(act(word_to_matrix(h).inverse(), x))


def _twisted_pair(letters: Tuple[int, ...], pq: Tuple[int, int]) -> Tuple[int, int]:
    # M_h^-1 . x == x . h^-1 under the right action
    p, q = right_act_letters(pq[0], pq[1], [-y for y in reversed(letters)])
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return sigma_pair(p, q)


# ---------------------------------------------------------------------------
# orbits

class OrbitCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OrbitReport:
    seed: ExtRational
    tail: Tuple[ExtRational, ...]
    cycle: Tuple[ExtRational, ...]

    @property
    def steps_to_cycle(self) -> int:
        return len(self.tail)

    @property
    def normalized_cycle(self) -> Tuple[ExtRational, ...]:
        """The cycle rotated so its least element comes first."""
        return _normalize_cycle(self.cycle)


def _order_key(c) -> tuple:
    p, q = (c.p, c.q) if isinstance(c, ExtRational) else c
    return (1, 0) if q == 0 else (0, Fraction(p, q))


def _normalize_cycle(cycle: Sequence) -> tuple:
    # rotate so the least element comes first; 1/0 sorts after every finite value
    keys = [_order_key(c) for c in cycle]
    i = keys.index(min(keys))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def orbit(fn: Callable[[ExtRational], ExtRational], seed: ExtRational,
          cap: int = 100_000) -> OrbitReport:
    seen: Dict[ExtRational, int] = {}
    path: List[ExtRational] = []
    x = seed
    while x not in seen:
        if len(path) >= cap:
            raise OrbitCapExceeded(f"orbit of {seed} did not close within {cap} steps")
        seen[x] = len(path)
        path.append(x)
        x = fn(x)
    i = seen[x]
    return OrbitReport(seed, tuple(path[:i]), tuple(path[i:]))


def reduced_fractions(height: int) -> Iterator[Tuple[int, int]]:
    """All reduced p/q with max(|p|, |q|) <= height, ordered by (q, p)."""
    yield (1, 0)
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            if gcd(p, q) == 1:
                yield (p, q)


@dataclass
class AttractorSummary:
    cycles: set = field(default_factory=set)          # normalized tuples of pairs
    parity_counts: Dict[str, Dict[tuple, int]] = field(default_factory=dict)
    exceptions: List[str] = field(default_factory=list)
    scanned: int = 0

    def cycle_values(self) -> List[Tuple[ExtRational, ...]]:
        return sorted((tuple(ExtRational(*c) for c in cyc) for cyc in self.cycles),
                      key=lambda cyc: (len(cyc), [_order_key(c) for c in cyc]))

    def two_cycles(self) -> List[Tuple[ExtRational, ...]]:
        return [c for c in self.cycle_values() if len(c) == 2]

    def fixed_points(self) -> List[ExtRational]:
        return [c[0] for c in self.cycle_values() if len(c) == 1]

    def merge(self, other: "AttractorSummary") -> None:
        self.cycles |= other.cycles
        for parity, counts in other.parity_counts.items():
            mine = self.parity_counts.setdefault(parity, {})
            for cyc, n in counts.items():
                mine[cyc] = mine.get(cyc, 0) + n
        self.exceptions.extend(other.exceptions)
        self.scanned += other.scanned


_FIXED = ((-1, 1),)
_TWO_CYCLE = ((0, 1), (1, 0))
_PARITY = {(1, 1): "OO", (1, 0): "OE", (0, 1): "EO"}


def _scan_chunk(args) -> AttractorSummary:
    seeds, twist, cap, check_parity = args
    if twist:
        step = functools.partial(_twisted_pair, twist)
    else:
        def step(pq):
            return sigma_pair(*pq)
    fate: Dict[Tuple[int, int], tuple] = {}
    summary = AttractorSummary()
    for seed in seeds:
        summary.scanned += 1
        path = []
        index = {}
        x = seed
        while x not in fate and x not in index:
            if len(path) >= cap:
                break
            index[x] = len(path)
            path.append(x)
            x = step(x)
        if x in fate:
            cyc = fate[x]
        elif x in index:
            cyc = _normalize_cycle(path[index[x]:])
            summary.cycles.add(cyc)
        else:
            summary.exceptions.append(f"{seed[0]}/{seed[1]}: no cycle within {cap} steps")
            continue
        for y in path:
            fate[y] = cyc
        parity = _PARITY[(seed[0] % 2, seed[1] % 2)]
        counts = summary.parity_counts.setdefault(parity, {})
        counts[cyc] = counts.get(cyc, 0) + 1
        if check_parity:
            expected = _FIXED if parity == "OO" else _TWO_CYCLE
            if cyc != expected:
                summary.exceptions.append(
                    f"{seed[0]}/{seed[1]} ({parity}) lands on {cyc}")
    return summary


def attractor_scan(height: int, twist: Optional[Word] = None, cap: int = 100_000,
                   jobs: int = 1) -> AttractorSummary:
    """Classify the terminal cycle of every reduced fraction of height <= height.

    For the untwisted map the parity rule is checked: p, q both odd lands on
    the fixed point -1/1, everything else on the 2-cycle 0/1 <-> 1/0.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    letters = twist.letters if twist is not None else ()
    check_parity = not letters
    seeds = list(reduced_fractions(height))
    if jobs <= 1:
        return _scan_chunk((seeds, letters, cap, check_parity))
    chunks = [(seeds[i::jobs], letters, cap, check_parity) for i in range(jobs)]
    summary = AttractorSummary()
    with multiprocessing.Pool(jobs) as pool:
        for part in pool.imap_unordered(_scan_chunk, chunks):
            summary.merge(part)
    return summary


# ---------------------------------------------------------------------------
# fibers and the functional equation

_UNSWAP = {(1, 0): ZERO, (0, 1): INFINITY, (-1, 1): ONE}
_FIBER_LOOP = Word((2, 2, 1, 1))    # b b a a, in H with trivial phi-image


def preimage_family(target: ExtRational, count: int) -> List[ExtRational]:
    """``count`` distinct sigma-preimages of target.

    Write target = *' . w' with *' in {0/1, 1/0, -1/1}; then every
    unswap(*') . (b b a a)^j s(w') maps to target.
    """
    d = decompose(target)
    star, w = d.terminal, d.fund_word
    if star == ONE:
        # 1/1 = -1/1 . A
        star, w = MINUS_ONE, Word((-1,)) * w
    base = _UNSWAP[star.pair]
    lift = section(w)
    out = []
    for j in range(count):
        out.append(right_act(base, _FIBER_LOOP ** j * lift))
    return out


def verify_functional_equation(x: ExtRational, w: Word) -> bool:
    """sigma(x . w) == sigma(x) . phi(w) for w in H."""
    return sigma(right_act(x, w)) == right_act(sigma(x), phi(w))


def _plot_chunk(seeds) -> List[Tuple[int, int, int, int]]:
    return [(p, q) + sigma_pair(p, q) for p, q in seeds]


def plot_rows(height: int, jobs: int = 1) -> List[Tuple[int, int, int, int]]:
    """Rows (p, q, sp, sq) for every reduced fraction, sorted by (q, p)."""
    seeds = list(reduced_fractions(height))
    if jobs <= 1:
        rows = _plot_chunk(seeds)
    else:
        rows = []
        with multiprocessing.Pool(jobs) as pool:
            for part in pool.imap_unordered(_plot_chunk, [seeds[i::jobs] for i in range(jobs)]):
                rows.extend(part)
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows
