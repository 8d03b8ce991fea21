"""Black-box vertex colorings with palette bookkeeping and query accounting.

An oracle answers color queries for vertices of one graph family and counts
every query it answers. Colorings come from built-in rules, from table
files, or from composition by the reductions; the query counter is the only
mutable state in the core library.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .core import ElementSet
from .errors import ContractViolation, VertexCapExceeded
from .graphs import DEFAULT_VERTEX_CAP, Family, GraphFamilySpec, is_vertex, vertex_count, vertices

RULE_NAMES = ("constant", "min-element-capped", "proper-lovasz", "random")


@dataclass
class ColoringOracle:
    """Queryable coloring of one family's vertices with m palette colors.

    The coloring function must be deterministic; repeated queries on a vertex
    return the same color. Answers are expected to lie in [1, m], but the
    oracle does not clamp them: a rule constructed with a too-small declared
    palette is exactly the adversarial input whose contract violation the
    solvers surface as a no-solution error.
    """

    spec: GraphFamilySpec
    m: int
    source: str
    fn: Callable[[ElementSet], int]
    _queries: int = field(default=0, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"palette size must be positive, got m={self.m}")

    @property
    def queries(self) -> int:
        return self._queries

    def color_of(self, a: ElementSet) -> int:
        """Answer the color of vertex a and increment the query counter."""
        if not is_vertex(self.spec, a):
            raise ValueError(f"{a.canonical()} is not a vertex of {self.spec}")
        c = self.fn(a)
        if not isinstance(c, int) or c < 1:
            raise ContractViolation(f"oracle answered a non-color {c!r} for {a.canonical()}")
        with self._lock:
            self._queries += 1
        return c


def _hash_color(seed: int, a: ElementSet, m: int) -> int:
    """Platform-stable pseudorandom color, a pure function of (seed, vertex)."""
    digest = hashlib.blake2b(f"{seed}|{a.n}|{a.canonical()}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") % m + 1


def make_rule_coloring(
    spec: GraphFamilySpec, m: int, rule_id: str, seed: int | None = None
) -> ColoringOracle:
    """Construct a rule-backed oracle.

    Rules: "constant" (always 1), "min-element-capped" (min(min(A), m)),
    "proper-lovasz" (the minimal element, with one overflow class n-2k+2 for
    vertices inside the top 2k-1 elements), and "random" (seeded, pure in
    (seed, vertex)).
    """
    if m < 1:
        raise ValueError(f"palette size must be positive, got m={m}")
    n, k = spec.n, spec.k
    if rule_id == "constant":
        fn = lambda a: 1
    elif rule_id == "min-element-capped":
        fn = lambda a: min(a.elements[0], m)
    elif rule_id == "proper-lovasz":
        cutoff = n - 2 * k + 1
        fn = lambda a: a.elements[0] if a.elements[0] <= cutoff else cutoff + 1
    elif rule_id == "random":
        if seed is None:
            raise ValueError("the random rule requires a seed")
        fn = lambda a: _hash_color(seed, a, m)
    else:
        raise ValueError(f"unknown rule {rule_id!r}; known rules: {', '.join(RULE_NAMES)}")
    return ColoringOracle(spec, m, f"rule:{rule_id}", fn)


def make_table_coloring(spec: GraphFamilySpec, m: int, table: dict[tuple[int, ...], int]) -> ColoringOracle:
    """Oracle backed by an explicit vertex -> color table; missing vertices error."""

    def fn(a: ElementSet) -> int:
        try:
            return table[a.elements]
        except KeyError:
            raise ContractViolation(f"coloring table has no entry for vertex {a.canonical()}") from None

    return ColoringOracle(spec, m, "table", fn)


def save_coloring(oracle: ColoringOracle, path: str | Path, vertex_cap: int = DEFAULT_VERTEX_CAP) -> None:
    """Materialize an oracle over all vertices of its spec into a table file."""
    count = vertex_count(oracle.spec)
    if count > vertex_cap:
        raise VertexCapExceeded(f"{oracle.spec} has {count} vertices, cap is {vertex_cap}")
    lines = [f"{oracle.spec.n} {oracle.spec.k} {oracle.m} {oracle.spec.family.value}"]
    for v in vertices(oracle.spec):
        lines.append(f"{v.canonical()} {oracle.color_of(v)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_coloring(path: str | Path) -> ColoringOracle:
    """Load a table oracle from a coloring file.

    Format: a header line "n k m family", then one "<elements> <color>" line
    per vertex ("1,3 2"); '#' starts a comment. Tables may be partial, in
    which case querying a missing vertex raises.
    """
    spec: GraphFamilySpec | None = None
    m = 0
    table: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if spec is None:
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: header must be 'n k m family'")
            n, k, m = int(parts[0]), int(parts[1]), int(parts[2])
            if m < 1:
                raise ValueError(f"{path}:{lineno}: palette size must be positive")
            try:
                spec = GraphFamilySpec(Family(parts[3]), n, k)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            continue
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected '<elements> <color>'")
        try:
            v = ElementSet.parse(parts[0], spec.n)
            color = int(parts[1])
            vertex_ok = is_vertex(spec, v)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        if not vertex_ok:
            raise ValueError(f"{path}:{lineno}: {v.canonical()} is not a vertex of {spec}")
        if not 1 <= color <= m:
            raise ValueError(f"{path}:{lineno}: color {color} outside palette [1, {m}]")
        if v.elements in table:
            raise ValueError(f"{path}:{lineno}: duplicate vertex {v.canonical()}")
        table[v.elements] = color
    if spec is None:
        raise ValueError(f"{path}: empty coloring file")
    return make_table_coloring(spec, m, table)
