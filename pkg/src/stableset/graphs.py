"""Kneser-type graph families: membership, materialization, exact invariants.

Four families over the k-subsets of [n], all with disjointness adjacency:
all k-subsets, the cyclically stable ones, the cyclically unstable ones, and
the linearly unstable ones (where n and 1 do not count as consecutive).
Exact chromatic and independence numbers are computed by search at desk
scale and serve as oracles for the closed-form values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .core import ElementSet, count_stable, enumerate_stable, is_stable
from .errors import VertexCapExceeded

DEFAULT_VERTEX_CAP = 5000
DEFAULT_CHI_CAP = 120


class Family(str, Enum):
    KNESER = "kneser"
    SCHRIJVER = "schrijver"
    UNSTABLE_CYCLIC = "u"
    UNSTABLE_LINEAR = "utilde"


@dataclass(frozen=True)
class GraphFamilySpec:
    """Symbolic handle for one graph: family tag plus the parameters n, k."""

    family: Family
    n: int
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.k < 1 or self.n < 2 * self.k:
            raise ValueError(f"need n >= 2k >= 2, got n={self.n}, k={self.k}")

    def __str__(self) -> str:
        return f"{self.family.value}({self.n},{self.k})"


def is_vertex(spec: GraphFamilySpec, s: ElementSet) -> bool:
    """Membership of s in the family's vertex set. Raises on size mismatch."""
    if s.n != spec.n:
        raise ValueError(f"ground-set mismatch: set has n={s.n}, spec has n={spec.n}")
    if len(s) != spec.k:
        raise ValueError(f"size mismatch: |s|={len(s)}, spec has k={spec.k}")
    if spec.family is Family.KNESER:
        return True
    if spec.family is Family.SCHRIJVER:
        return is_stable(s, wraparound=True)
    if spec.family is Family.UNSTABLE_CYCLIC:
        return not is_stable(s, wraparound=True)
    return not is_stable(s, wraparound=False)


def adjacent(spec: GraphFamilySpec, a: ElementSet, b: ElementSet) -> bool:
    """Disjointness adjacency; both arguments must be vertices of spec."""
    if not is_vertex(spec, a) or not is_vertex(spec, b):
        raise ValueError("adjacency queried on a non-vertex")
    return a.isdisjoint(b)


def count_stable_linear(n: int, k: int) -> int:
    """Number of k-subsets of [n] with no two consecutive elements: C(n-k+1, k)."""
    return math.comb(n - k + 1, k)


def vertex_count(spec: GraphFamilySpec) -> int:
    """Exact vertex count, computed without enumeration."""
    n, k = spec.n, spec.k
    if spec.family is Family.KNESER:
        return math.comb(n, k)
    if spec.family is Family.SCHRIJVER:
        return count_stable(n, k)
    if spec.family is Family.UNSTABLE_CYCLIC:
        return math.comb(n, k) - count_stable(n, k)
    return math.comb(n, k) - count_stable_linear(n, k)


def vertices(spec: GraphFamilySpec) -> Iterator[ElementSet]:
    """Yield the family's vertices in lexicographic order."""
    n, k = spec.n, spec.k
    if spec.family is Family.SCHRIJVER:
        yield from enumerate_stable(n, k, wraparound=True)
        return
    for combo in itertools.combinations(range(1, n + 1), k):
        s = ElementSet(n, combo)
        if spec.family is Family.KNESER or is_vertex(spec, s):
            yield s


@dataclass
class MaterializedGraph:
    """Explicit vertex list plus adjacency bitmasks (bit j of adj[i] = edge i~j)."""

    spec: GraphFamilySpec
    vertices: list[ElementSet]
    adj: list[int]
    _index: dict[tuple[int, ...], int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {v.elements: i for i, v in enumerate(self.vertices)}

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def index_of(self, s: ElementSet) -> int:
        return self._index[s.elements]

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()


def materialize(spec: GraphFamilySpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> MaterializedGraph:
    """Build the explicit graph; refuses when the vertex count exceeds the cap."""
    count = vertex_count(spec)
    if count > vertex_cap:
        raise VertexCapExceeded(f"{spec} has {count} vertices, cap is {vertex_cap}")
    verts = list(vertices(spec))
    adj = [0] * len(verts)
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if a.mask & verts[j].mask == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return MaterializedGraph(spec, verts, adj)


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_clique(adj: list[int], seeds: int = 64) -> list[int]:
    """Deterministic greedy clique: extend from high-degree seeds, keep the best."""
    nv = len(adj)
    order = sorted(range(nv), key=lambda v: (-adj[v].bit_count(), v))
    best: list[int] = []
    for seed in order[: min(nv, seeds)]:
        clique = [seed]
        cand = adj[seed]
        while cand:
            u = next(v for v in order if cand >> v & 1)
            clique.append(u)
            cand &= adj[u]
        if len(clique) > len(best):
            best = clique
    return best


def greedy_coloring(adj: list[int]) -> list[int]:
    """DSATUR greedy coloring; returns the color (0-based) of every vertex."""
    nv = len(adj)
    colors = [-1] * nv
    forb = [0] * nv
    uncolored = set(range(nv))
    while uncolored:
        v = max(uncolored, key=lambda u: (forb[u].bit_count(), adj[u].bit_count(), -u))
        c = 0
        while forb[v] >> c & 1:
            c += 1
        colors[v] = c
        uncolored.remove(v)
        for u in _iter_bits(adj[v]):
            if colors[u] == -1:
                forb[u] |= 1 << c
    return colors


def _colorable(adj: list[int], m: int, clique: list[int]) -> bool:
    """Decide m-colorability by DSATUR-ordered backtracking.

    Forward checking maintains per-vertex forbidden-color masks, forced
    vertices (one allowed color left) are assigned eagerly, a fresh color may
    only be opened once per level (standard color-symmetry breaking), and the
    given clique is precolored with distinct colors, which is valid up to
    renaming colors.
    """
    nv = len(adj)
    if nv == 0:
        return True
    if m <= 0:
        return False
    if len(clique) > m:
        return False
    full = (1 << m) - 1
    color = [-1] * nv
    forb = [0] * nv
    state = {"uncolored": (1 << nv) - 1, "used": 0}

    def place(v: int, c: int, changed: list[tuple[int, int]]) -> bool:
        """Assign color c to v, recording forbidden-bit changes; False on wipeout."""
        color[v] = c
        state["uncolored"] &= ~(1 << v)
        bit = 1 << c
        for u in _iter_bits(adj[v] & state["uncolored"]):
            if not forb[u] & bit:
                forb[u] |= bit
                changed.append((u, bit))
                if forb[u] == full:
                    return False
        return True

    def unwind(assigned: list[int], changed: list[tuple[int, int]], used_before: int) -> None:
        for u, bit in changed:
            forb[u] &= ~bit
        for v in assigned:
            color[v] = -1
            state["uncolored"] |= 1 << v
        state["used"] = used_before

    def solve() -> bool:
        used_before = state["used"]
        assigned: list[int] = []
        changed: list[tuple[int, int]] = []

        def fail() -> bool:
            unwind(assigned, changed, used_before)
            return False

        # eager assignment of forced vertices (single allowed color)
        while True:
            forced = -1
            for v in _iter_bits(state["uncolored"]):
                allowed = full & ~forb[v]
                if allowed == 0:
                    return fail()
                if allowed & (allowed - 1) == 0:
                    forced = v
                    break
            if forced < 0:
                break
            c = (full & ~forb[forced]).bit_length() - 1
            assigned.append(forced)
            if c >= state["used"]:
                state["used"] = c + 1
            if not place(forced, c, changed):
                return fail()

        if state["uncolored"] == 0:
            unwind(assigned, changed, used_before)
            return True

        # DSATUR pick: max saturation, then max dynamic degree, then min index
        best_v = -1
        best_key = None
        for v in _iter_bits(state["uncolored"]):
            key = (forb[v].bit_count(), (adj[v] & state["uncolored"]).bit_count(), -v)
            if best_key is None or key > best_key:
                best_key = key
                best_v = v

        limit = min(m, state["used"] + 1)  # at most one fresh color
        allowed = full & ~forb[best_v] & ((1 << limit) - 1)
        for c in _iter_bits(allowed):
            sub_changed: list[tuple[int, int]] = []
            used_snap = state["used"]
            if c >= state["used"]:
                state["used"] = c + 1
            if place(best_v, c, sub_changed) and solve():
                unwind([best_v], sub_changed, used_snap)
                unwind(assigned, changed, used_before)
                return True
            unwind([best_v], sub_changed, used_snap)
        return fail()

    for i, v in enumerate(clique):
        ch: list[tuple[int, int]] = []
        if i >= state["used"]:
            state["used"] = i + 1
        if not place(v, i, ch):
            return False
    return solve()


def chromatic_number_exact(graph: MaterializedGraph, vertex_cap: int = DEFAULT_CHI_CAP) -> int:
    """Exact chromatic number by iterated k-colorability tests, ascending targets.

    The search starts from a clique lower bound (for stable-family specs the
    known clique number floor(n/k) is also used) and stops at the first
    feasible target; the DSATUR greedy bound caps the iteration.
    """
    nv = graph.num_vertices
    if nv == 0:
        return 0
    if nv > vertex_cap:
        raise VertexCapExceeded(f"{nv} vertices exceeds the exact-chi cap {vertex_cap}")
    clique = greedy_clique(graph.adj)
    lb = len(clique)
    if graph.spec.family is Family.SCHRIJVER:
        lb = max(lb, graph.spec.n // graph.spec.k)
    ub = max(greedy_coloring(graph.adj)) + 1
    for m in range(lb, ub):
        if _colorable(graph.adj, m, clique):
            return m
    return ub


def _greedy_independent_set(adj: list[int], alive: int) -> list[int]:
    """Greedy MIS inside the induced subgraph on `alive`: repeat min-degree picks."""
    chosen: list[int] = []
    while alive:
        best_v = -1
        best_key = None
        for v in _iter_bits(alive):
            key = ((adj[v] & alive).bit_count(), v)
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
        chosen.append(best_v)
        alive &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _clique_cover_bound(adj: list[int], cand: int) -> int:
    """Greedy partition of `cand` into cliques; the count bounds the MIS size."""
    count = 0
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= ~(1 << v)
        grow = adj[v] & rest
        while grow:
            u = (grow & -grow).bit_length() - 1
            rest &= ~(1 << u)
            grow &= adj[u] & rest
        count += 1
    return count


def independence_number_exact(graph: MaterializedGraph) -> int:
    """Exact independence number by branch-and-bound over vertex bitmasks.

    Each node applies degree-0/degree-1 reductions (always safe for maximum
    independent set), prunes with a greedy clique-cover bound, and branches
    on a maximum-degree vertex, include-branch first.
    """
    adj = graph.adj
    nv = graph.num_vertices
    if nv == 0:
        return 0
    best = len(_greedy_independent_set(adj, (1 << nv) - 1))
    state = {"best": best}

    def expand(cand: int, size: int) -> None:
        # reductions: isolated vertices join, degree-1 vertices dominate
        while True:
            again = False
            for v in _iter_bits(cand):
                if not cand >> v & 1:
                    continue
                dv = adj[v] & cand
                deg = dv.bit_count()
                if deg == 0:
                    size += 1
                    cand &= ~(1 << v)
                elif deg == 1:
                    size += 1
                    cand &= ~(dv | (1 << v))
                    again = True
            if not again:
                break
        if not cand:
            if size > state["best"]:
                state["best"] = size
            return
        if size + _clique_cover_bound(adj, cand) <= state["best"]:
            return
        pivot = -1
        pivot_deg = -1
        for v in _iter_bits(cand):
            deg = (adj[v] & cand).bit_count()
            if deg > pivot_deg:
                pivot_deg = deg
                pivot = v
        expand(cand & ~(adj[pivot] | (1 << pivot)), size + 1)
        expand(cand & ~(1 << pivot), size)

    expand((1 << nv) - 1, 0)
    return state["best"]


def alpha_u_formula(n: int, k: int) -> int:
    """Largest intersecting family of unstable k-subsets: C(n-1,k-1) - C(n-k-1,k-1)."""
    if k < 2:
        raise ValueError(f"formula requires k >= 2, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    return math.comb(n - 1, k - 1) - math.comb(n - k - 1, k - 1)


def chi_bounds(spec: GraphFamilySpec) -> tuple[int, int]:
    """Best known chromatic-number bounds for the spec's family.

    Kneser and Schrijver graphs have the exact value n-2k+2. The linearly
    unstable family has the exact value min(n-2k+2, floor(n/2)). For the
    cyclically unstable family the bounds differ by one in general; they
    coincide at the upper value when n is congruent to 1 mod 4, and the gap
    for n congruent to 3 mod 4 (with n >= 4k-1) is open.
    """
    n, k = spec.n, spec.k
    exact_ks = n - 2 * k + 2
    if spec.family in (Family.KNESER, Family.SCHRIJVER):
        return exact_ks, exact_ks
    if k == 1:
        return 0, 0  # singletons are always stable, so the unstable families are empty
    if spec.family is Family.UNSTABLE_LINEAR:
        value = min(exact_ks, n // 2)
        return value, value
    lower = min(exact_ks, n // 2)
    upper = min(exact_ks, (n + 1) // 2)
    if n % 4 == 1:
        lower = upper
    return lower, upper


def hilton_milner_bound(n: int, k: int) -> int:
    """Maximum size of a non-trivial intersecting family of k-subsets of [n]."""
    if k < 3:
        raise ValueError(f"bound requires k >= 3, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    return math.comb(n - 1, k - 1) - math.comb(n - k - 1, k - 1) + 1


def hilton_milner_family(n: int, k: int, i: int, a: ElementSet) -> list[ElementSet]:
    """The extremal non-trivial intersecting family anchored at element i and set a.

    Returns every k-subset that contains i and meets a, together with a
    itself, in lexicographic order. Requires i outside a and |a| = k.
    """
    if k < 3:
        raise ValueError(f"construction requires k >= 3, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    if a.n != n or len(a) != k:
        raise ValueError(f"anchor set must be a k-subset of [n], got {a}")
    if not 1 <= i <= n:
        raise ValueError(f"element {i} outside [1, {n}]")
    if i in a:
        raise ValueError(f"anchor element {i} must lie outside the anchor set {a}")
    rest = [e for e in range(1, n + 1) if e != i]
    members = [a]
    for combo in itertools.combinations(rest, k - 1):
        f = ElementSet.of(n, combo + (i,))
        if not f.isdisjoint(a):
            members.append(f)
    members.sort(key=lambda s: s.elements)
    return members
