"""The acceptance suite as plain functions.

Each ``criterion_N`` returns a :class:`Result`; ``run_all`` drives them for
the ``verify`` subcommand and the test suite prints the same lines.
"""
from __future__ import annotations

import random
from math import gcd
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from . import schreier
from .boundary import (attractor_scan, orbit, preimage_family, reduced_fractions,
                       sigma, sigma_pair, sigma_via_stabilizer,
                       verify_functional_equation)
from .projective import ExtRational, right_act
from .twister import classify, family, reduce_to_M
from .virtualendo import GENERATOR_IMAGES, phi, phi_via_rewrite
from .words import Context, Word, format_word, parse
from .wreath import (Perm, WreathElement, apply_letters, builtin,
                     nucleus_search, Contracting, phi_cross_check, witness_power)

__all__ = ["Result", "CRITERIA", "run_all", "random_word", "random_H_word", "format_line"]

SEED = 20240611


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0


def format_line(r: Result) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"criterion {r.number:2d} [{status}] {r.title}: {r.detail} ({r.seconds:.2f}s)"


def random_word(rng: random.Random, max_len: int, context: Context = Context.MODULI) -> Word:
    letters = [rng.choice(context.bases) * rng.choice((1, -1))
               for _ in range(rng.randint(0, max_len))]
    return Word(letters, context)


def random_H_word(rng: random.Random, max_len: int) -> Word:
    """A word in H of length <= max_len: a random word times its coset fixer."""
    while True:
        w = random_word(rng, max(0, max_len - 1))
        s = schreier.coset_of(w)
        w = w * ~Word(schreier.REP[s])
        if len(w) <= max_len and schreier.in_H(w):
            return w


def _q(text: str) -> ExtRational:
    return ExtRational.parse(text)


def _fmt(xs) -> str:
    return "[" + ", ".join(map(str, xs)) + "]"


def _checks(items) -> tuple:
    """items: list of (label, ok). Returns (all ok, detail)."""
    bad = [label for label, ok in items if not ok]
    if not bad:
        return True, f"{len(items)} checks"
    return False, f"{len(bad)}/{len(items)} failed: " + "; ".join(bad[:4])


# ---------------------------------------------------------------------------

def criterion_1() -> Result:
    cases = [
        ("203/356", ["203/356", "-50/33", "-13/6", "6/1", "-1/2"], ["0/1", "1/0"]),
        ("203/354", ["203/354", "-28/19", "-7/4", "-4/1"], ["1/0", "0/1"]),
    ]
    items = []
    for seed, tail, cyc in cases:
        best = float("inf")
        for _ in range(5):
            t0 = time.perf_counter()
            rep = orbit(sigma, _q(seed))
            best = min(best, time.perf_counter() - t0)
        exact = [str(x) for x in rep.tail] == tail and [str(x) for x in rep.cycle] == cyc
        items.append((f"{seed} orbit {_fmt(rep.tail)} -> {_fmt(rep.cycle)}", exact))
        items.append((f"{seed} took {best * 1e3:.3f} ms", best < 1e-3))
    ok, detail = _checks(items)
    return Result(1, "reference orbits exact", ok, detail)


def criterion_2(height: int = 1000, jobs: int = 1) -> Result:
    t0 = time.perf_counter()
    s = attractor_scan(height, jobs=jobs)
    elapsed = time.perf_counter() - t0
    cycles = {tuple(str(x) for x in c) for c in s.cycle_values()}
    items = [
        (f"cycles {sorted(cycles)}", cycles == {("-1/1",), ("0/1", "1/0")}),
        (f"{len(s.exceptions)} exceptions", not s.exceptions),
        (f"{elapsed:.1f}s >= 60s", elapsed < 60),
    ]
    ok, detail = _checks(items)
    if ok:
        detail = f"{s.scanned} seeds, parity rule exact, {elapsed:.1f}s"
    return Result(2, "finite global attractor", ok, detail)


def criterion_3(height: int = 200) -> Result:
    total, bad = 0, []
    for p, q in reduced_fractions(height):
        x = ExtRational(p, q)
        total += 1
        a, b = sigma(x), sigma_via_stabilizer(x)
        if a != b:
            bad.append(f"{x}: {a} vs {b}")
    if not bad:
        return Result(3, "oracle equivalence", True, f"{total} fractions agree")
    return Result(3, "oracle equivalence", False,
                  f"{len(bad)}/{total} disagree, e.g. " + "; ".join(bad[:3]))


def criterion_4(samples: int = 10_000) -> Result:
    M = Context.MODULI
    items = [("phi(aaBABaaB) = bAbb", phi(parse("aaBABaaB")) == parse("bAbb"))]
    for name, image in GENERATOR_IMAGES.items():
        g = schreier.H_GENERATORS[name]
        items.append((f"phi({name})", phi(g) == image))
    items.append(("phi(aaa) = b", phi(parse("aaa")) == parse("b")))
    items.append(("phi(bbb) = a", phi(parse("bbb")) == parse("a")))
    items.append(("phi(ccc) = c", phi(parse("ccc", M)) == parse("c", M)))
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(samples):
        w = random_H_word(rng, 64)
        if phi(w) != phi_via_rewrite(w):
            mismatches += 1
    items.append((f"transducer vs rewriting: {mismatches} mismatches", mismatches == 0))
    ok, detail = _checks(items)
    return Result(4, "transducer correctness", ok, detail)


def criterion_5(samples: int = 10_000) -> Result:
    trace = [format_word(f) for f in schreier.rewrite_factors(parse("abbAB"))]
    items = [(f"trace {'·'.join(trace)}", trace == ["e", "ab", "e", "bAB", "e"])]
    rng = random.Random(SEED + 5)
    bad = 0
    for _ in range(samples):
        w = random_H_word(rng, 64)
        if schreier.expand_rewrite(schreier.rewrite(w)) != w:
            bad += 1
    items.append((f"expansion round trip: {bad} failures", bad == 0))
    ok, detail = _checks(items)
    return Result(5, "rewriting", ok, detail)


def criterion_6(n_max: int = 100, inv_height: int = 300, parity_height: int = 500) -> Result:
    items = []
    for x, y in [("1/1", "-1/1"), ("1/3", "-1/1"), ("-2/1", "1/0"),
                 ("1/2", "0/1"), ("-1/2", "0/1")]:
        got = sigma(_q(x))
        items.append((f"sigma({x}) = {got}, expected {y}", got == _q(y)))
    fam_bad = []
    for n in range(1, n_max + 1):
        if sigma(ExtRational(n + 1, n)) != ExtRational(-n, n + 1):
            fam_bad.append(f"({n + 1})/{n}")
        want = ExtRational(-(n - 1), n - 2) if n % 2 else ExtRational(-(n + 1), n)
        if sigma(ExtRational(n, n + 1)) != want:
            fam_bad.append(f"{n}/({n + 1})")
    items.append((f"families fail at {fam_bad[:5]}", not fam_bad))
    inv_bad, inv_total = [], 0
    for p, q in reduced_fractions(inv_height):
        inv_total += 1
        x = ExtRational(p, q)
        if sigma(x.reciprocal()) != sigma(x).reciprocal():
            inv_bad.append(str(x))
    items.append((f"inversion symmetry fails on {len(inv_bad)}/{inv_total} "
                  f"(e.g. {', '.join(inv_bad[:3])})", not inv_bad))
    expected = {(1, 1): (1, 1), (1, 0): (0, 1), (0, 1): (1, 0)}
    par_bad = 0
    for p, q in reduced_fractions(parity_height):
        sp, sq = sigma_pair(p, q)
        if (sp % 2, sq % 2) != expected[(p % 2, q % 2)]:
            par_bad += 1
    items.append((f"parity transitions: {par_bad} failures", par_bad == 0))
    ok, detail = _checks(items)
    return Result(6, "point and family identities", ok, detail)


def criterion_7(samples: int = 1000) -> Result:
    rng = random.Random(SEED + 7)
    bad = []
    for _ in range(samples):
        while True:
            q = rng.randint(0, 100)
            p = rng.randint(-100, 100)
            if (p, q) != (0, 0) and gcd(p, q) == 1:
                break
        x = ExtRational(p, q)
        w = random_H_word(rng, 40)
        if not verify_functional_equation(x, w):
            bad.append(f"x={x}, w={w}")
    if not bad:
        return Result(7, "functional equation", True, f"{samples} random pairs")
    return Result(7, "functional equation", False,
                  f"{len(bad)}/{samples} pairs fail, e.g. " + "; ".join(bad[:2]))


def criterion_8(targets: int = 200, count: int = 5) -> Result:
    loop = parse("bbaa")
    items = []
    for k in range(-10, 11):
        x = right_act(ExtRational(0, 1), loop ** k)
        items.append((f"sigma(0/1.(bbaa)^{k}) = {sigma(x)}", sigma(x) == ExtRational(1, 0)))
    rng = random.Random(SEED + 8)
    fractions = list(reduced_fractions(50))
    bad = []
    for _ in range(targets):
        t = ExtRational(*rng.choice(fractions))
        pre = preimage_family(t, count)
        if len(set(pre)) != count or any(sigma(y) != t for y in pre):
            bad.append(str(t))
    items.append((f"preimage families fail for {len(bad)}/{targets} targets {bad[:3]}", not bad))
    ok, detail = _checks(items)
    return Result(8, "fibers", ok, detail)


def criterion_9(samples: int = 10_000) -> Result:
    M = Context.MODULI
    items = []
    u = WreathElement(tuple(parse(s, M) for s in ("e", "ba", "a", "B")), Perm.parse("(1 4 2)", 4))
    v = WreathElement(tuple(parse(s, M) for s in ("ba", "A", "e", "b")), Perm.parse("(1 3 4)", 4))
    want = WreathElement(tuple(parse(s, M) for s in ("b", "baba", "a", "BA")), Perm.parse("(2 3 4)", 4))
    items.append(("worked product", u * v == want))
    for n in range(1, 7):
        items.append((f"Phi((ba)^{3 * n})", witness_power(n)))
    items.append(("Phi_f(acbd) = 1", apply_letters(builtin("phi-f"), (1, 3, 2, 4)).is_identity()))
    res = nucleus_search(builtin("phi-f-b2"), 200, 50)
    items.append((f"nucleus search on phi-f-b2: {type(res).__name__}", isinstance(res, Contracting)))
    rng = random.Random(SEED + 9)
    bad = 0
    for _ in range(samples):
        if not phi_cross_check(random_H_word(rng, 64)):
            bad += 1
    items.append((f"phi cross-check: {bad} failures", bad == 0))
    ok, detail = _checks(items)
    return Result(9, "wreath engine", ok, detail)


def criterion_10(samples: int = 500) -> Result:
    items = []
    table = {"e": "RationalF", "bb": "RationalF", "aB": "RationalF",
             "b": "RationalG", "A": "RationalG", "aaB": "RationalG", "AbA": "RationalG"}
    evidence = {}
    for text, kind in table.items():
        c = classify(parse(text))
        evidence[text] = c.evidence
        items.append((f"{text} -> {c}", str(c) == kind))
    for k in range(-5, 6):
        c = classify(family(k))
        items.append((f"a(ba)^{k} -> {c}", c.kind == "Obstructed" and c.k == k))
    b_cycles = {tuple(str(x) for x in c) for c in evidence["b"]}
    items.append((f"f.b cycles {sorted(b_cycles)}", b_cycles == {("0/1", "1/0"), ("-1/1", "1/1")}))
    for text in ("A", "aaB"):
        n2 = sum(1 for c in evidence[text] if len(c) == 2)
        items.append((f"f.{text} shows {n2} two-cycles", n2 >= 2))
    rng = random.Random(SEED + 10)
    slow = 0
    for _ in range(samples):
        w = random_word(rng, 40)
        try:
            reduce_to_M(w, 10 * max(1, len(w)))
        except RuntimeError:
            slow += 1
    items.append((f"{slow} random words missed the psi_bar bound", slow == 0))
    ok, detail = _checks(items)
    return Result(10, "twisting", ok, detail)


CRITERIA: Dict[int, Callable[[], Result]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10,
}


def run_one(number: int, **kwargs) -> Result:
    t0 = time.perf_counter()
    r = CRITERIA[number](**kwargs)
    r.seconds = time.perf_counter() - t0
    return r


def run_all(only: Optional[List[int]] = None, echo: Optional[Callable[[str], None]] = None) -> List[Result]:
    out = []
    for n in only or sorted(CRITERIA):
        r = run_one(n)
        out.append(r)
        if echo:
            echo(format_line(r))
    return out
