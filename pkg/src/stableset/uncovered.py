"""Finding a stable k-subset that hits every given set in at most half its size.

The pipeline: draw a random subset with inclusion probability 2k/n, repair
it (drop consecutive pairs, trim over-full constraint sets), and take any k
elements of what survives. The repair loss is controlled by a counting
function f whose expectation over partial 0/1/star choices has a closed
form, evaluated in exact rational arithmetic; fixing entries one by one
while keeping that expectation at least k derandomizes the draw completely.
A brute-force scan over the stable-set enumeration serves as the totality
oracle, and a separate matching-based routine splits [4k] into four stable
k-subsets hitting each given 4-set exactly once.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import ElementSet, binomial, count_stable, enumerate_stable, is_stable
from .errors import ContractViolation, InsufficientSlackError, VertexCapExceeded

ZERO, ONE, STAR = 0, 1, 2

DEFAULT_ENUM_CAP = 500_000


@dataclass(frozen=True)
class UncoveredInstance:
    """Ground set [n], target size k, and constraint sets V_1..V_l of size >= 2.

    The sets need not be disjoint and need not cover [n]; their number is
    capped at n-2k+1, which is what guarantees a solution exists.
    """

    n: int
    k: int
    sets: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        if self.k < 1 or self.n < 2 * self.k:
            raise ValueError(f"need n >= 2k >= 2, got n={self.n}, k={self.k}")
        object.__setattr__(self, "sets", tuple(self.sets))
        limit = self.n - 2 * self.k + 1
        if len(self.sets) > limit:
            raise ValueError(f"l={len(self.sets)} sets exceed n-2k+1={limit}")
        for i, v in enumerate(self.sets, 1):
            if v.n != self.n:
                raise ValueError(f"V_{i} lives on ground set {v.n}, instance has n={self.n}")
            if len(v) < 2:
                raise ValueError(f"V_{i} has size {len(v)} < 2; normalize the instance first")

    @property
    def ell(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.sets)

    @property
    def p(self) -> Fraction:
        return Fraction(2 * self.k, self.n)

    @classmethod
    def of(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "UncoveredInstance":
        return cls(n, k, tuple(ElementSet.of(n, v) for v in sets))


def validate_and_normalize(
    n: int, k: int, sets: Sequence[Iterable[int]]
) -> tuple[UncoveredInstance, tuple[int, ...]]:
    """Reduce away singleton constraint sets and relabel the ground set.

    A singleton set forces its element out of every solution, so the element
    is deleted from the ground set and from all sets (labels above it shift
    down, preserving cyclic order) and emptied sets are dropped; this repeats
    until every set has size at least 2. Returns the normalized instance and
    the relabeling as a tuple mapping new labels (by position, 1-based) to
    original labels.
    """
    if k < 1 or n < 2 * k:
        raise ValueError(f"need n >= 2k >= 2, got n={n}, k={k}")
    work: list[list[int]] = []
    for i, v in enumerate(sets, 1):
        elems = sorted(set(v))
        if elems != sorted(v):
            raise ValueError(f"V_{i} has repeated elements")
        if not elems:
            raise ValueError(f"V_{i} is empty")
        if elems[0] < 1 or elems[-1] > n:
            raise ValueError(f"V_{i} has elements outside [1, {n}]")
        work.append(elems)
    if len(work) > n - 2 * k + 1:
        raise ValueError(f"l={len(work)} sets exceed n-2k+1={n - 2 * k + 1}")

    orig = list(range(1, n + 1))
    while True:
        singleton = next((v for v in work if len(v) == 1), None)
        if singleton is None:
            break
        e = singleton[0]
        orig.pop(e - 1)
        work = [[x - 1 if x > e else x for x in v if x != e] for v in work]
        work = [v for v in work if v]
    n_new = len(orig)
    if n_new < 2 * k:
        raise ValueError(f"normalization shrank the ground set to {n_new} < 2k = {2 * k}")
    inst = UncoveredInstance.of(n_new, k, work)
    return inst, tuple(orig)


def relabel_solution(s: ElementSet, relabeling: tuple[int, ...], original_n: int) -> ElementSet:
    """Map a solution of the normalized instance back to original labels."""
    return ElementSet.of(original_n, (relabeling[e - 1] for e in s.elements))


def _consecutive_pairs_mask(mask: int, n: int) -> int:
    """Bit j-1 set iff both j and its cyclic successor belong to the set."""
    succ = (mask >> 1) | ((mask & 1) << (n - 1))
    return mask & succ


def f_value(s: ElementSet, inst: UncoveredInstance) -> int:
    """|S| minus the cyclic consecutive pairs in S minus, per set, the number
    of (floor(r_i/2)+1)-subsets of S intersect V_i. May be negative."""
    if s.n != inst.n:
        raise ValueError(f"set lives on ground set {s.n}, instance has n={inst.n}")
    pairs = _consecutive_pairs_mask(s.mask, inst.n).bit_count()
    overfull = 0
    for v in inst.sets:
        q = len(v) // 2 + 1
        overfull += binomial((s.mask & v.mask).bit_count(), q)
    return len(s) - pairs - overfull


@dataclass(frozen=True)
class PartialChoice:
    """A 0/1/star vector over [n] plus the star inclusion probability p = 2k/n."""

    entries: tuple[int, ...]
    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if any(v not in (ZERO, ONE, STAR) for v in self.entries):
            raise ValueError("entries must be 0, 1, or star")
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")

    @classmethod
    def all_star(cls, inst: UncoveredInstance) -> "PartialChoice":
        return cls((STAR,) * inst.n, inst.p)

    def with_element(self, element: int, value: int) -> "PartialChoice":
        """Copy with the entry of one element (1-based) fixed to 0 or 1."""
        entries = list(self.entries)
        entries[element - 1] = value
        return PartialChoice(tuple(entries), self.p)

    def ones_set(self, n: int) -> ElementSet:
        return ElementSet.of(n, (i + 1 for i, v in enumerate(self.entries) if v == ONE))


@dataclass(frozen=True)
class StarCounts:
    """Per-set counts: stars (undecided entries) and ones (committed entries)."""

    stars: int
    ones: int


def star_counts(x: PartialChoice, inst: UncoveredInstance) -> tuple[StarCounts, ...]:
    out = []
    for v in inst.sets:
        stars = sum(1 for e in v.elements if x.entries[e - 1] == STAR)
        ones = sum(1 for e in v.elements if x.entries[e - 1] == ONE)
        out.append(StarCounts(stars, ones))
    return tuple(out)


def _conv_term(stars: int, ones: int, q: int, p: Fraction) -> Fraction:
    """Expected number of q-subsets of S intersect V for a set with the given counts."""
    total = Fraction(0)
    for m in range(q + 1):
        c = binomial(stars, m) * binomial(ones, q - m)
        if c:
            total += c * p**m
    return total


def phi(x: PartialChoice, inst: UncoveredInstance) -> Fraction:
    """Exact expected value of f over random completions of the partial choice.

    Three closed-form terms: expected size (ones + p * stars), expected
    cyclic pairs (weight 1, p, or p^2 by the pair's pattern, 0 once a zero is
    involved), and per set the convolution sum over how many of the
    floor(r/2)+1 chosen elements are stars.
    """
    n = inst.n
    if len(x.entries) != n:
        raise ValueError(f"partial choice has length {len(x.entries)}, instance has n={n}")
    p = x.p
    e = x.entries
    ones = sum(1 for v in e if v == ONE)
    stars = sum(1 for v in e if v == STAR)
    term1 = ones + p * stars
    n11 = n1s = nss = 0
    for j in range(n):
        u, w = e[j], e[(j + 1) % n]
        if u == ONE and w == ONE:
            n11 += 1
        elif u == STAR and w == STAR:
            nss += 1
        elif (u == ONE and w == STAR) or (u == STAR and w == ONE):
            n1s += 1
    term2 = n11 + p * n1s + p * p * nss
    term3 = Fraction(0)
    for sc, v in zip(star_counts(x, inst), inst.sets):
        term3 += _conv_term(sc.stars, sc.ones, len(v) // 2 + 1, p)
    return term1 - term2 - term3


@dataclass(frozen=True)
class AlterationTrace:
    """The three stages of the repair: the draw, after pair removal, after
    trimming, plus the final k-subset (None when too few elements survive)."""

    a: ElementSet
    a_prime: ElementSet
    a_double_prime: ElementSet
    outcome: ElementSet | None


def alteration(a: ElementSet, inst: UncoveredInstance) -> AlterationTrace:
    """Repair an arbitrary subset into a stable one meeting all constraints.

    Pair removal deletes every element whose cyclic successor is also present,
    judged against the original set with all removals simultaneous. Trimming
    then processes the constraint sets in index order, deleting the largest
    elements of the current intersection until it fits below half the set
    size. The outcome takes the k smallest survivors when enough remain.
    """
    n = inst.n
    if a.n != n:
        raise ValueError(f"set lives on ground set {a.n}, instance has n={n}")
    removed = _consecutive_pairs_mask(a.mask, n)
    a_prime = ElementSet.of(n, (e for e in a.elements if not removed >> (e - 1) & 1))
    current = set(a_prime.elements)
    for v in inst.sets:
        cap = len(v) // 2
        inter = sorted(current & set(v.elements))
        for e in inter[cap:]:
            current.remove(e)
    a_pp = ElementSet.of(n, current)
    outcome = ElementSet.of(n, a_pp.elements[: inst.k]) if len(a_pp) >= inst.k else None
    return AlterationTrace(a, a_prime, a_pp, outcome)


def _include_element(seed: int, element: int, p: Fraction) -> bool:
    """Seeded Bernoulli(p) draw, a platform-stable pure function of (seed, element)."""
    digest = hashlib.blake2b(f"{seed}:{element}".encode(), digest_size=8).digest()
    u = int.from_bytes(digest, "big")
    return u * p.denominator < p.numerator << 64


def randomized_solve(inst: UncoveredInstance, seed: int) -> AlterationTrace:
    """One Monte Carlo trial: seeded p = 2k/n draw, repair, take k smallest.

    A None outcome is a legitimate failure; rerun with another seed. The full
    trace is returned so runs are replayable and auditable.
    """
    p = inst.p
    drawn = [e for e in range(1, inst.n + 1) if _include_element(seed, e, p)]
    return alteration(ElementSet.of(inst.n, drawn), inst)


def derandomized_solve(
    inst: UncoveredInstance, phi_trace: list[Fraction] | None = None
) -> ElementSet:
    """Deterministic solver by the method of conditional expectations.

    Requires phi(all-star) >= k, which is what the randomized analysis
    guarantees once n is a sufficient constant multiple of k; the check, not
    any constant, gates execution. Entries are fixed in element order to
    whichever of 0/1 maximizes the exactly-evaluated potential (ties pick 0),
    which never drops below k; the resulting 0/1 vector's set S has
    f(S) >= k, so the repair keeps at least k elements.

    Potential updates are incremental: fixing one entry only moves the two
    incident cyclic pairs and the convolution terms of the sets containing
    the element. Pass phi_trace to capture the potential after every step.
    """
    n, k, p = inst.n, inst.k, inst.p
    x = PartialChoice.all_star(inst)
    current = phi(x, inst)
    if current < k:
        raise InsufficientSlackError(
            f"phi(all-star) = {current} < k = {k}; the alteration argument gives no "
            "slack here, fall back to brute force"
        )
    if phi_trace is not None:
        phi_trace.append(current)

    entries = [STAR] * n
    stars = [len(v) for v in inst.sets]
    ones = [0] * inst.ell
    caps = [len(v) // 2 + 1 for v in inst.sets]
    sets_at: list[list[int]] = [[] for _ in range(n)]
    for si, v in enumerate(inst.sets):
        for e in v.elements:
            sets_at[e - 1].append(si)

    conv_cache: dict[tuple[int, int, int], Fraction] = {}

    def conv(s: int, t: int, q: int) -> Fraction:
        key = (s, t, q)
        if key not in conv_cache:
            conv_cache[key] = _conv_term(s, t, q, p)
        return conv_cache[key]

    p2 = p * p

    def pair_term(u: int, w: int) -> Fraction:
        if u == ZERO or w == ZERO:
            return Fraction(0)
        if u == ONE:
            return Fraction(1) if w == ONE else p
        return p if w == ONE else p2

    for element in range(1, n + 1):
        idx = element - 1
        left = (idx - 1) % n
        pair_starts = {left, idx}
        old_pairs = sum(pair_term(entries[j], entries[(j + 1) % n]) for j in pair_starts)
        d3_one = Fraction(0)
        d3_zero = Fraction(0)
        for si in sets_at[idx]:
            base = conv(stars[si], ones[si], caps[si])
            d3_one += conv(stars[si] - 1, ones[si] + 1, caps[si]) - base
            d3_zero += conv(stars[si] - 1, ones[si], caps[si]) - base

        entries[idx] = ONE
        pairs_one = sum(pair_term(entries[j], entries[(j + 1) % n]) for j in pair_starts)
        phi_one = current + (1 - p) - (pairs_one - old_pairs) - d3_one

        entries[idx] = ZERO
        pairs_zero = sum(pair_term(entries[j], entries[(j + 1) % n]) for j in pair_starts)
        phi_zero = current - p - (pairs_zero - old_pairs) - d3_zero

        if phi_one > phi_zero:
            entries[idx] = ONE
            current = phi_one
            for si in sets_at[idx]:
                stars[si] -= 1
                ones[si] += 1
        else:
            entries[idx] = ZERO
            current = phi_zero
            for si in sets_at[idx]:
                stars[si] -= 1
        assert current >= k, "conditional expectation dropped below k"
        if phi_trace is not None:
            phi_trace.append(current)

    chosen = ElementSet.of(n, (i + 1 for i in range(n) if entries[i] == ONE))
    assert current == f_value(chosen, inst), "incremental potential drifted from f"
    trace = alteration(chosen, inst)
    if trace.outcome is None:
        raise ContractViolation("repair kept fewer than k elements despite f(S) >= k")
    return trace.outcome


def brute_force_solve(inst: UncoveredInstance, vertex_cap: int = DEFAULT_ENUM_CAP) -> ElementSet:
    """First stable k-subset in enumeration order meeting every constraint.

    Total by the covering argument: n-2k+1 intersecting families cannot
    exhaust the stable k-subsets, so a solution always exists; running out of
    candidates certifies a broken instance.
    """
    count = count_stable(inst.n, inst.k)
    if count > vertex_cap:
        raise VertexCapExceeded(f"{count} stable sets exceed the cap {vertex_cap}")
    for s in enumerate_stable(inst.n, inst.k, wraparound=True):
        if all(2 * s.intersection_size(v) <= len(v) for v in inst.sets):
            return s
    raise ContractViolation("no stable k-subset satisfies the constraints; instance invariants were broken")


def verify_uncovered_solution(inst: UncoveredInstance, s: ElementSet) -> bool:
    """Size k, cyclically stable, and 2|S cap V_i| <= |V_i| for every set."""
    if s.n != inst.n or len(s) != inst.k:
        return False
    if not is_stable(s, wraparound=True):
        return False
    return all(2 * s.intersection_size(v) <= len(v) for v in inst.sets)


def _two_color(n: int, edges: list[tuple[int, int]]) -> list[int]:
    """2-color a union of matchings (paths and even cycles), 0 at each
    component's lowest-index vertex."""
    neighbors: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    color = [-1] * (n + 1)
    for root in range(1, n + 1):
        if color[root] != -1:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in neighbors[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise AssertionError("odd component in a union of two matchings")
    return color[1:]


def four_split(k: int, partition: Sequence[ElementSet]) -> tuple[ElementSet, ...]:
    """Split [4k] into four stable k-subsets, one element per given 4-set.

    Two matchings pair the cycle edges (odd-even and even-odd), a third pairs
    each 4-set's sorted elements, and 2-coloring the first union splits every
    4-set two against two; a fourth matching joins same-colored elements
    inside each 4-set, and 2-coloring the second union separates them. The
    four (first color, second color) classes avoid every cycle edge and meet
    every 4-set exactly once. Classes are reported sorted by smallest element.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    n = 4 * k
    parts = list(partition)
    if len(parts) != k:
        raise ValueError(f"expected {k} sets, got {len(parts)}")
    union = 0
    for v in parts:
        if v.n != n or len(v) != 4:
            raise ValueError(f"each part must be a 4-subset of [{n}], got {v}")
        if union & v.mask:
            raise ValueError("parts are not disjoint")
        union |= v.mask
    if union != (1 << n) - 1:
        raise ValueError(f"parts do not cover [{n}]")

    m1 = [(2 * j + 1, 2 * j + 2) for j in range(2 * k)]
    m2 = [(2 * j, 2 * j + 1) for j in range(1, 2 * k)] + [(n, 1)]
    m3 = []
    for v in parts:
        e = v.elements
        m3 += [(e[0], e[1]), (e[2], e[3])]
    c1 = _two_color(n, m1 + m3)

    m4 = []
    for v in parts:
        zeros = [e for e in v.elements if c1[e - 1] == 0]
        ones = [e for e in v.elements if c1[e - 1] == 1]
        assert len(zeros) == len(ones) == 2, "first coloring must split each 4-set evenly"
        m4 += [tuple(zeros), tuple(ones)]
    c2 = _two_color(n, m2 + m4)

    classes: dict[tuple[int, int], list[int]] = {}
    for e in range(1, n + 1):
        classes.setdefault((c1[e - 1], c2[e - 1]), []).append(e)
    out = [ElementSet.of(n, members) for members in classes.values()]
    assert len(out) == 4 and all(len(s) == k for s in out)
    out.sort(key=lambda s: s.elements[0])
    return tuple(out)
