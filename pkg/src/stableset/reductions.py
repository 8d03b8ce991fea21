"""Instance transformations between the three constrained stable-set problems.

Each reduction ships with a back-mapper that turns a solution of the target
instance into a solution of the source instance, plus source-side verifiers,
so end-to-end soundness is checkable on every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coloring import ColoringOracle
from .core import ElementSet, is_stable
from .errors import ContractViolation
from .graphs import Family, GraphFamilySpec
from .schrijver import MonochromaticEdge
from .uncovered import UncoveredInstance, verify_uncovered_solution


@dataclass(frozen=True)
class FiscInstance:
    """A partition of [n] into parts of odd size >= 3.

    Sought: a cyclically stable set meeting every part in at least half its
    size minus one. Odd part sizes are what the hardness construction uses,
    and they make the downstream counting argument exact.
    """

    n: int
    parts: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("need at least one part")
        union = 0
        for i, v in enumerate(self.parts, 1):
            if v.n != self.n:
                raise ValueError(f"part {i} lives on ground set {v.n}, instance has n={self.n}")
            if len(v) < 3 or len(v) % 2 == 0:
                raise ValueError(f"part {i} has size {len(v)}; parts must have odd size >= 3")
            if union & v.mask:
                raise ValueError(f"part {i} overlaps an earlier part")
            union |= v.mask
        if union != (1 << self.n) - 1:
            raise ValueError(f"parts do not cover [{self.n}]")

    @property
    def m(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class CtInstance:
    """A Hamilton cycle on [3k] plus k vertex-disjoint triangles, edge-disjoint.

    The cycle is given as the vertex order along it (a permutation of [3k]);
    sought is an independent set of size k in the union graph.
    """

    k: int
    cycle: tuple[int, ...]
    triangles: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(self, "triangles", tuple(self.triangles))
        n = 3 * self.k
        if self.k < 1:
            raise ValueError(f"need k >= 1, got k={self.k}")
        if sorted(self.cycle) != list(range(1, n + 1)):
            raise ValueError(f"cycle must be a permutation of [1, {n}]")
        union = 0
        for i, t in enumerate(self.triangles, 1):
            if t.n != n or len(t) != 3:
                raise ValueError(f"triangle {i} must be a 3-subset of [{n}]")
            if union & t.mask:
                raise ValueError(f"triangle {i} shares a vertex with an earlier one")
            union |= t.mask
        if len(self.triangles) != self.k or union != (1 << n) - 1:
            raise ValueError(f"triangles must partition [{n}] into {self.k} triples")
        cycle_edges = set(self.cycle_edge_set())
        for t in self.triangles:
            a, b, c = t.elements
            for e in ((a, b), (a, c), (b, c)):
                if frozenset(e) in cycle_edges:
                    raise ValueError(f"triangle edge {e} coincides with a cycle edge")

    @property
    def n(self) -> int:
        return 3 * self.k

    def cycle_edge_set(self) -> list[frozenset[int]]:
        n = self.n
        return [frozenset((self.cycle[i], self.cycle[(i + 1) % n])) for i in range(n)]

    def triangle_edge_set(self) -> list[frozenset[int]]:
        out = []
        for t in self.triangles:
            a, b, c = t.elements
            out += [frozenset((a, b)), frozenset((a, c)), frozenset((b, c))]
        return out


def uncovered_to_schrijver(
    inst: UncoveredInstance,
) -> tuple[ColoringOracle, Callable[[MonochromaticEdge], ElementSet]]:
    """Color each stable k-subset by the first constraint set it over-fills.

    A vertex that over-fills no set gets the last color l. Two disjoint sets
    cannot both over-fill the same V_i, so a monochromatic edge carries color
    l, both endpoints meet the first l-1 constraints, and at least one also
    meets V_l; back_map returns that endpoint, trying them in lexicographic
    order.
    """
    if inst.ell == 0:
        raise ValueError("the coloring reduction needs at least one constraint set")

    def fn(a: ElementSet) -> int:
        for i, v in enumerate(inst.sets, 1):
            if 2 * a.intersection_size(v) > len(v):
                return i
        return inst.ell

    spec = GraphFamilySpec(Family.SCHRIJVER, inst.n, inst.k)
    oracle = ColoringOracle(spec, inst.ell, "composed", fn)

    def back_map(edge: MonochromaticEdge) -> ElementSet:
        for s in sorted((edge.a, edge.b), key=lambda s: s.elements):
            if verify_uncovered_solution(inst, s):
                return s
        raise ContractViolation(
            "neither endpoint satisfies the instance; the edge was not monochromatic under the reduction coloring"
        )

    return oracle, back_map


def fisc_to_uncovered(
    f: FiscInstance,
) -> tuple[UncoveredInstance, Callable[[ElementSet], ElementSet]]:
    """Reinterpret the partition as constraint sets with k = (n - m) / 2.

    Summing |S cap V_i| <= (|V_i| - 1) / 2 over a partition bounds |S| by
    (n - m) / 2 = k, so a size-k solution is forced to meet every part in
    exactly (|V_i| - 1) / 2 elements, which is at least |V_i| / 2 - 1.
    back_map is the identity, with the forced equality checked.
    """
    k = (f.n - f.m) // 2
    inst = UncoveredInstance(f.n, k, f.parts)

    def back_map(s: ElementSet) -> ElementSet:
        for i, v in enumerate(f.parts, 1):
            if 2 * s.intersection_size(v) != len(v) - 1:
                raise ContractViolation(
                    f"|S cap V_{i}| != (|V_{i}|-1)/2; the solution does not come from a valid solve"
                )
        return s

    return inst, back_map


def ct_to_uncovered(
    c: CtInstance,
) -> tuple[UncoveredInstance, Callable[[ElementSet], ElementSet]]:
    """Relabel so the Hamilton cycle reads 1..3k, constrain by the triangles.

    A stable k-subset meeting each of the k triangles at most once must, by
    the pigeonhole over a partition, meet each exactly once, so it avoids
    every triangle edge; stability makes it avoid every cycle edge. back_map
    restores the original vertex labels.
    """
    n = c.n
    new_label = {vertex: i + 1 for i, vertex in enumerate(c.cycle)}
    sets = [ElementSet.of(n, (new_label[v] for v in t.elements)) for t in c.triangles]
    inst = UncoveredInstance(n, c.k, tuple(sets))

    def back_map(s: ElementSet) -> ElementSet:
        return ElementSet.of(n, (c.cycle[e - 1] for e in s.elements))

    return inst, back_map


def verify_fisc_solution(f: FiscInstance, s: ElementSet) -> bool:
    """Cyclically stable and 2|S cap V_i| >= |V_i| - 2 for every part; any size."""
    if s.n != f.n:
        return False
    if not is_stable(s, wraparound=True):
        return False
    return all(2 * s.intersection_size(v) >= len(v) - 2 for v in f.parts)


def verify_ct_solution(c: CtInstance, s: ElementSet) -> bool:
    """Size k and independent against both the cycle edges and the triangle edges."""
    if s.n != c.n or len(s) != c.k:
        return False
    members = set(s.elements)
    for edge in c.cycle_edge_set() + c.triangle_edge_set():
        if all(v in members for v in edge):
            return False
    return True
