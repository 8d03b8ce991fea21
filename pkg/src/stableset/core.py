"""Subsets of [n] and cyclic stability: representation, enumeration, counting.

Elements are 1-based throughout, so the ground set is {1, ..., n}. A set is
stable when it is independent in the n-cycle: no two consecutive elements and
not both 1 and n. Linear stability drops the wraparound pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass(frozen=True)
class ElementSet:
    """An immutable subset of [n] stored as a strictly increasing tuple.

    A bitmask (bit e-1 set for element e) is precomputed for fast
    disjointness and intersection tests. Python ints are unbounded, so the
    mask path works for every n, not just word-sized ground sets.
    """

    n: int
    elements: tuple[int, ...]
    mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground-set size must be positive, got n={self.n}")
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))
        prev = 0
        mask = 0
        for e in self.elements:
            if not isinstance(e, int):
                raise ValueError(f"elements must be integers: {self.elements!r}")
            if e <= prev:
                raise ValueError(f"elements must be strictly increasing: {self.elements}")
            if e > self.n:
                raise ValueError(f"element {e} outside [1, {self.n}]")
            prev = e
            mask |= 1 << (e - 1)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "ElementSet":
        """Build from any iterable of elements, sorting them first."""
        return cls(n, tuple(sorted(elements)))

    @classmethod
    def parse(cls, text: str, n: int) -> "ElementSet":
        """Parse the canonical comma-separated form, e.g. "1,3,5"."""
        text = text.strip()
        if not text:
            return cls(n, ())
        return cls.of(n, (int(tok) for tok in text.split(",")))

    def canonical(self) -> str:
        """Canonical textual form: comma-separated ascending elements."""
        return ",".join(str(e) for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.n and bool(self.mask >> (e - 1) & 1)

    def isdisjoint(self, other: "ElementSet") -> bool:
        return self.mask & other.mask == 0

    def intersection_size(self, other: "ElementSet") -> int:
        return (self.mask & other.mask).bit_count()


def is_stable(s: ElementSet, wraparound: bool = True) -> bool:
    """Whether s has no two consecutive elements (and, cyclically, not both 1 and n).

    With wraparound, 1 and n count as consecutive; singletons are stable for
    every n, and {1, 2} is unstable already by the successor rule.
    """
    if s.mask & (s.mask >> 1):
        return False
    if wraparound and s.n >= 2 and len(s.elements) >= 2:
        if s.elements[0] == 1 and s.elements[-1] == s.n:
            return False
    return True


def enumerate_stable(n: int, k: int, wraparound: bool = True) -> Iterator[ElementSet]:
    """Yield the stable k-subsets of [n] in lexicographic order of element lists.

    Streams results; nothing is materialized. Rejects n < 2k, where no stable
    k-subset exists cyclically.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")

    def extend(prefix: list[int], start: int) -> Iterator[ElementSet]:
        need = k - len(prefix)
        if need == 0:
            yield ElementSet(n, tuple(prefix))
            return
        limit = n - 1 if (wraparound and prefix and prefix[0] == 1) else n
        # v, v+2, ..., v+2(need-1) must all fit below the limit
        for v in range(start, limit - 2 * (need - 1) + 1):
            prefix.append(v)
            yield from extend(prefix, v + 2)
            prefix.pop()

    yield from extend([], 1)


def count_stable(n: int, k: int) -> int:
    """Number of cyclically stable k-subsets of [n]: (n/k) * C(n-k-1, k-1).

    Computed as n * C(n-k-1, k-1) // k; the product is always divisible by k,
    and big-integer arithmetic keeps the result exact.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    return n * math.comb(n - k - 1, k - 1) // k


def count_stable_containing(n: int, k: int, i: int) -> int:
    """Number of cyclically stable k-subsets of [n] that contain element i.

    Equals C(n-k-1, k-1), independently of which element i is.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    if not 1 <= i <= n:
        raise ValueError(f"element {i} outside [1, {n}]")
    return math.comb(n - k - 1, k - 1)


def binomial(a: int, b: int) -> int:
    """C(a, b) with the out-of-range convention: 0 when b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)
