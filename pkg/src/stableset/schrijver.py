"""Monochromatic-edge search in Schrijver graphs.

Four routes to a same-colored disjoint pair of stable k-subsets: exhaustive
scan, the block-interval method (polynomial for palettes below d * floor(n /
(2k+d-2))), the extension of a small-palette coloring to the whole Kneser
graph, and the lifting of a solver for the n = 4k case to arbitrary n via
monitored block simulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .coloring import ColoringOracle
from .core import ElementSet, count_stable, enumerate_stable, is_stable
from .errors import ContractViolation, NoSolutionError, UntrustedSubsolverError, VertexCapExceeded
from .graphs import Family, GraphFamilySpec, is_vertex, vertex_count, vertices

DEFAULT_BRUTE_CAP = 500_000


@dataclass(frozen=True)
class MonochromaticEdge:
    """Two disjoint vertices that the oracle colors the same.

    Endpoints are stored in lexicographic order, so equal edges compare equal
    regardless of discovery order.
    """

    a: ElementSet
    b: ElementSet
    color: int

    def __post_init__(self) -> None:
        if self.a.elements > self.b.elements:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)


def verify_mono_edge(oracle: ColoringOracle, edge: MonochromaticEdge) -> bool:
    """Check disjointness, family membership of both endpoints, and equal colors.

    Queries the oracle for both endpoints; never raises.
    """
    try:
        if not edge.a.isdisjoint(edge.b):
            return False
        if not is_vertex(oracle.spec, edge.a) or not is_vertex(oracle.spec, edge.b):
            return False
        ca = oracle.color_of(edge.a)
        cb = oracle.color_of(edge.b)
        return ca == cb == edge.color
    except Exception:
        return False


def _first_mono_pair(colored: Iterable[tuple[ElementSet, int]]) -> MonochromaticEdge | None:
    """Lexicographically first (by color, then endpoints) disjoint same-color pair."""
    by_color: dict[int, list[ElementSet]] = {}
    for v, c in colored:
        by_color.setdefault(c, []).append(v)
    for c in sorted(by_color):
        group = sorted(by_color[c], key=lambda s: s.elements)
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                if a.isdisjoint(b):
                    return MonochromaticEdge(a, b, c)
    return None


def brute_force_mono_edge(oracle: ColoringOracle, vertex_cap: int = DEFAULT_BRUTE_CAP) -> MonochromaticEdge:
    """Query every vertex once and return the first monochromatic edge.

    Works for any family. Requires the declared palette to guarantee a
    solution (m <= n-2k+1); finding none then certifies a contract violation
    by the oracle.
    """
    spec = oracle.spec
    guaranteed = spec.n - 2 * spec.k + 1
    if oracle.m > guaranteed:
        raise ValueError(f"m={oracle.m} exceeds n-2k+1={guaranteed}; no edge is guaranteed")
    count = vertex_count(spec)
    if count > vertex_cap:
        raise VertexCapExceeded(f"{spec} has {count} vertices, cap is {vertex_cap}")
    colored = [(v, oracle.color_of(v)) for v in vertices(spec)]
    edge = _first_mono_pair(colored)
    if edge is None:
        raise NoSolutionError(
            f"no monochromatic edge in {spec} with m={oracle.m}: "
            "the oracle broke its palette or determinism contract"
        )
    return edge


def _shift(s: ElementSet, offset: int, n: int) -> ElementSet:
    return ElementSet(n, tuple(e + offset for e in s.elements))


@dataclass(frozen=True)
class IntervalPlan:
    """Disjoint blocks of 2k+d-2 consecutive elements and their stable families.

    Block i spans elements [(i-1)w+1, iw] for w = 2k+d-2; its vertex family
    consists of the k-subsets stable in the block's own cyclic order, which
    are all globally stable as well.
    """

    d: int
    t: int
    blocks: list[tuple[int, int]]
    group_vertices: list[list[ElementSet]]


def build_interval_plan(n: int, k: int, d: int) -> IntervalPlan:
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    width = 2 * k + d - 2
    t = n // width
    if t < 1:
        raise ValueError(f"no block of {width} consecutive elements fits in [{n}]")
    blocks = [((i * width) + 1, (i + 1) * width) for i in range(t)]
    local = list(enumerate_stable(width, k, wraparound=True))
    groups = [[_shift(v, i * width, n) for v in local] for i in range(t)]
    return IntervalPlan(d, t, blocks, groups)


def interval_solver(oracle: ColoringOracle, d: int) -> MonochromaticEdge:
    """Find a monochromatic edge by querying t disjoint blocks of stable sets.

    With m <= d*t - 1 colors, either two blocks repeat a color (cross-block
    vertices are disjoint) or some block sees fewer than d colors and its
    copy of the (2k+d-2, k) stable family, whose chromatic number is d,
    contains a monochromatic edge. Queries at most t * |S(2k+d-2, k)|
    vertices.
    """
    spec = oracle.spec
    if spec.family is not Family.SCHRIJVER:
        raise ValueError(f"interval solver expects a Schrijver oracle, got {spec}")
    n, k = spec.n, spec.k
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    width = 2 * k + d - 2
    t = n // width
    m_max = d * t - 1
    if oracle.m > m_max:
        raise ContractViolation(
            f"m={oracle.m} exceeds d*floor(n/(2k+d-2))-1 = {m_max}; the interval method needs fewer colors"
        )
    plan = build_interval_plan(n, k, d)
    budget = t * count_stable(width, k)
    colored: list[tuple[ElementSet, int]] = []
    for group in plan.group_vertices:
        for v in group:
            colored.append((v, oracle.color_of(v)))
    assert len(colored) <= budget, "query budget exceeded"
    edge = _first_mono_pair(colored)
    if edge is None:
        raise NoSolutionError("interval collection held no monochromatic pair; oracle broke its contract")
    return edge


def extend_coloring_to_kneser(
    oracle: ColoringOracle,
) -> tuple[ColoringOracle, Callable[[MonochromaticEdge], MonochromaticEdge]]:
    """Extend a floor(n/2)-2k+1 coloring of the stable sets to all of K(n,k).

    Unstable sets contain a pair of cyclically consecutive elements and hence
    an odd element; such a set with smallest odd element 2i-1 gets color i
    (a proper coloring of the unstable part, since two sets sharing the color
    share that element). Stable sets keep their original color, shifted up by
    ceil(n/2). The combined palette is exactly n-2k+1, and any monochromatic
    Kneser edge must lie in the shifted range and be an original edge, which
    back_map recovers.
    """
    spec = oracle.spec
    if spec.family is not Family.SCHRIJVER:
        raise ValueError(f"extension expects a Schrijver oracle, got {spec}")
    n, k = spec.n, spec.k
    expected = n // 2 - 2 * k + 1
    if oracle.m != expected:
        raise ValueError(f"extension needs m = floor(n/2)-2k+1 = {expected}, got m={oracle.m}")
    half_up = (n + 1) // 2

    def fn(a: ElementSet) -> int:
        if is_stable(a, wraparound=True):
            return oracle.color_of(a) + half_up
        smallest_odd = next(e for e in a.elements if e % 2 == 1)
        return (smallest_odd + 1) // 2

    kneser = ColoringOracle(GraphFamilySpec(Family.KNESER, n, k), n - 2 * k + 1, "composed", fn)

    def back_map(edge: MonochromaticEdge) -> MonochromaticEdge:
        if edge.color <= half_up:
            raise ContractViolation(
                f"shared color {edge.color} is in the unstable range [1, {half_up}]; "
                "disjoint endpoints cannot share an odd element, so the edge is invalid"
            )
        return MonochromaticEdge(edge.a, edge.b, edge.color - half_up)

    return kneser, back_map


class _AbortSimulation(Exception):
    """Raised inside a monitored block simulation once 2k+2 colors were seen."""


class _BlockMonitor:
    """Records the first-seen vertex of every new color, in query order."""

    def __init__(self, threshold: int):
        self.threshold = threshold
        self.first_seen: list[tuple[ElementSet, int]] = []
        self._colors: set[int] = set()

    def record(self, v: ElementSet, c: int) -> None:
        if c not in self._colors:
            self._colors.add(c)
            self.first_seen.append((v, c))
            if len(self._colors) >= self.threshold:
                raise _AbortSimulation()


def _block_oracle(
    oracle: ColoringOracle, offset: int, k: int, m_claim: int, monitor: _BlockMonitor | None
) -> ColoringOracle:
    """Restriction of the global oracle to one block, presented as S(4k,k)."""
    n = oracle.spec.n

    def fn(local: ElementSet) -> int:
        c = oracle.color_of(_shift(local, offset, n))
        if monitor is not None:
            monitor.record(_shift(local, offset, n), c)
        return c

    return ColoringOracle(GraphFamilySpec(Family.SCHRIJVER, 4 * k, k), m_claim, "composed", fn)


def lift_4k_solver(
    oracle: ColoringOracle,
    sub: Callable[[ColoringOracle], MonochromaticEdge],
    stats: dict | None = None,
) -> MonochromaticEdge:
    """Solve a floor(n/2)-2k+1 coloring given a solver for S(4k,k) colorings.

    For n <= 8k the palette fits below the chromatic number 2k+2 of S(4k,k),
    so one run of the sub-solver on the first block suffices. Otherwise each
    of t = floor(n/4k) blocks is simulated under a monitor that aborts the
    moment 2k+2 distinct colors are observed; a simulation that completes
    cleanly yields a valid edge, and if all abort, the collected 2k+2
    distinctly colored vertices per block must repeat a color across blocks
    because t*(2k+2) exceeds the palette, giving a disjoint cross-block pair.

    The sub-solver is run against a proxy oracle and must let the abort
    exception propagate. Its returned edge has both endpoints re-queried
    through the monitor, matching the assumption that a solver queries what
    it returns.
    """
    spec = oracle.spec
    if spec.family is not Family.SCHRIJVER:
        raise ValueError(f"lift expects a Schrijver oracle, got {spec}")
    n, k = spec.n, spec.k
    if n < 4 * k:
        raise ValueError(f"lift needs n >= 4k, got n={n}, k={k}")
    expected = n // 2 - 2 * k + 1
    if oracle.m > expected:
        raise ValueError(f"lift needs m <= floor(n/2)-2k+1 = {expected}, got m={oracle.m}")
    width = 4 * k

    def run_block(offset: int, m_claim: int, monitor: _BlockMonitor | None) -> MonochromaticEdge:
        proxy = _block_oracle(oracle, offset, k, m_claim, monitor)
        local_edge = sub(proxy)
        ca = proxy.color_of(local_edge.a)
        cb = proxy.color_of(local_edge.b)
        a, b = _shift(local_edge.a, offset, n), _shift(local_edge.b, offset, n)
        if not (local_edge.a.isdisjoint(local_edge.b) and ca == cb):
            raise UntrustedSubsolverError(f"sub-solver returned an invalid edge on block at offset {offset}")
        if not (is_stable(a, wraparound=True) and is_stable(b, wraparound=True)):
            raise UntrustedSubsolverError(f"sub-solver returned globally unstable endpoints at offset {offset}")
        return MonochromaticEdge(a, b, ca)

    if n <= 8 * k:
        if stats is not None:
            stats.update({"branch": "direct", "t": 1, "aborted_blocks": 0})
        return run_block(0, oracle.m, None)

    t = n // width
    threshold = 2 * k + 2
    witnesses: list[list[tuple[ElementSet, int]]] = []
    for i in range(t):
        monitor = _BlockMonitor(threshold)
        try:
            edge = run_block(i * width, 2 * k + 1, monitor)
        except _AbortSimulation:
            witnesses.append(monitor.first_seen)
            continue
        if stats is not None:
            stats.update({"branch": "clean-simulation", "t": t, "aborted_blocks": i, "clean_block": i})
        return edge

    if stats is not None:
        stats.update({"branch": "collect", "t": t, "aborted_blocks": t})
    flat = [pair for block in witnesses for pair in block]
    edge = _first_mono_pair(flat)
    if edge is None:
        raise NoSolutionError(
            f"t*(2k+2) = {t * threshold} witnesses over {oracle.m} colors held no repeat; "
            "the oracle broke its palette contract"
        )
    return edge
