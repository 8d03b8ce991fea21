"""Shared brute-force oracles and random-instance generators for the tests.

The oracles here are deliberately independent of the library's fast paths:
enumeration by filtering all combinations, expectations by weighted sums
over completions, chromatic and independence numbers by naive search.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from stableset.core import ElementSet, is_stable
from stableset.reductions import CtInstance, FiscInstance
from stableset.uncovered import ONE, STAR, PartialChoice, UncoveredInstance, f_value


def stable_subsets_by_filter(n: int, k: int, wraparound: bool) -> list[tuple[int, ...]]:
    """Oracle: filter all C(n, k) combinations through the stability predicate."""
    out = []
    for combo in itertools.combinations(range(1, n + 1), k):
        if is_stable(ElementSet(n, combo), wraparound):
            out.append(combo)
    return out


def phi_by_completions(x: PartialChoice, inst: UncoveredInstance) -> Fraction:
    """Oracle: the expectation of f as an explicit weighted sum over completions."""
    stars = [i for i, v in enumerate(x.entries) if v == STAR]
    base = [i + 1 for i, v in enumerate(x.entries) if v == ONE]
    p = x.p
    total = Fraction(0)
    for bits in range(1 << len(stars)):
        chosen = bits.bit_count()
        weight = p**chosen * (1 - p) ** (len(stars) - chosen)
        members = base + [stars[j] + 1 for j in range(len(stars)) if bits >> j & 1]
        total += weight * f_value(ElementSet.of(inst.n, members), inst)
    return total


def chromatic_number_naive(adj: list[int], max_colors: int = 8) -> int:
    """Oracle: smallest m for which a straightforward backtracking m-colors the graph."""
    nv = len(adj)
    if nv == 0:
        return 0

    def colorable(m: int) -> bool:
        colors = [-1] * nv

        def rec(v: int) -> bool:
            if v == nv:
                return True
            banned = {colors[u] for u in range(v) if adj[v] >> u & 1}
            for c in range(m):
                if c not in banned:
                    colors[v] = c
                    if rec(v + 1):
                        return True
            colors[v] = -1
            return False

        return rec(0)

    for m in range(1, max_colors + 1):
        if colorable(m):
            return m
    raise AssertionError("naive search exceeded max_colors")


def independence_number_naive(adj: list[int]) -> int:
    """Oracle: maximum independent set by scanning all subsets (tiny graphs only)."""
    nv = len(adj)
    best = 0
    for mask in range(1 << nv):
        ok = True
        for v in range(nv):
            if mask >> v & 1 and adj[v] & mask:
                ok = False
                break
        if ok:
            best = max(best, mask.bit_count())
    return best


def random_uncovered_instance(
    rng: random.Random,
    n_lo: int = 4,
    n_hi: int = 14,
    size_lo: int = 2,
    size_hi: int = 8,
    k_hi: int | None = None,
) -> UncoveredInstance:
    n = rng.randint(n_lo, n_hi)
    k = rng.randint(1, min(n // 2, k_hi) if k_hi else n // 2)
    ell = rng.randint(0, n - 2 * k + 1)
    sets = []
    for _ in range(ell):
        size = rng.randint(size_lo, min(size_hi, n))
        sets.append(rng.sample(range(1, n + 1), size))
    return UncoveredInstance.of(n, k, sets)


def random_partial_choice(rng: random.Random, inst: UncoveredInstance) -> PartialChoice:
    entries = tuple(rng.choice((0, 1, 2)) for _ in range(inst.n))
    return PartialChoice(entries, inst.p)


def random_fisc_instance(rng: random.Random, n_hi: int = 15) -> FiscInstance:
    """Random partition of [n] into parts of odd size >= 3; n = 4 is infeasible."""
    while True:
        n = rng.randint(3, n_hi)
        sizes: list[int] = []
        remaining = n
        ok = True
        while remaining:
            options = [s for s in (3, 5, 7) if s <= remaining and remaining - s not in (1, 2)]
            if not options:
                ok = False
                break
            size = rng.choice(options)
            sizes.append(size)
            remaining -= size
        if ok:
            break
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    parts = []
    at = 0
    for size in sizes:
        parts.append(ElementSet.of(n, labels[at : at + size]))
        at += size
    return FiscInstance(n, tuple(parts))


def random_ct_instance(rng: random.Random, k: int, max_tries: int = 10_000) -> CtInstance:
    """Random Hamilton cycle plus a triangle partition avoiding its edges.

    Rejection sampling; k = 1 is infeasible (a 3-cycle uses every pair), so
    callers pass k >= 2.
    """
    n = 3 * k
    cycle = list(range(1, n + 1))
    rng.shuffle(cycle)
    cycle_edges = {frozenset((cycle[i], cycle[(i + 1) % n])) for i in range(n)}
    for _ in range(max_tries):
        labels = list(range(1, n + 1))
        rng.shuffle(labels)
        triples = [labels[3 * i : 3 * i + 3] for i in range(k)]
        collision = any(
            frozenset((a, b)) in cycle_edges
            for t in triples
            for a, b in itertools.combinations(t, 2)
        )
        if not collision:
            return CtInstance(k, tuple(cycle), tuple(ElementSet.of(n, t) for t in triples))
    raise AssertionError(f"no edge-disjoint triangle partition found for k={k}")


def random_four_partition(rng: random.Random, k: int) -> list[ElementSet]:
    labels = list(range(1, 4 * k + 1))
    rng.shuffle(labels)
    return [ElementSet.of(4 * k, labels[4 * i : 4 * i + 4]) for i in range(k)]
