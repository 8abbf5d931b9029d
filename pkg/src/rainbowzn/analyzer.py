"""Structural queries on colorings: dominance, strings, patterns, cosets.

All positions are cyclic. Intervals are (start, length) runs of consecutive
elements of Z_n, possibly wrapping past n - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .group import Coloring


@dataclass(frozen=True)
class CyclicInterval:
    n: int
    start: int
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= self.n:
            raise ValueError(f"interval length {self.length} out of range for Z_{self.n}")
        object.__setattr__(self, "start", self.start % self.n)

    @property
    def end(self) -> int:
        return (self.start + self.length - 1) % self.n

    def elements(self) -> list[int]:
        return [(self.start + k) % self.n for k in range(self.length)]

    def __str__(self):
        return f"[{self.start},{self.end}]"


@dataclass(frozen=True)
class DominanceGraph:
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]]

    def covers(self, x: int) -> bool:
        return all(x in e for e in self.edges)

    def has_2k2(self) -> bool:
        edges = list(self.edges)
        return any(not (e & f) for i, e in enumerate(edges) for f in edges[i + 1 :])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def _check_step(c: Coloring, i: int) -> None:
    if not 1 <= i < c.n:
        raise ValueError(f"step must lie in [1, {c.n}), got {i}")


def dominance_graph(c: Coloring, i: int) -> DominanceGraph:
    """Graph on the palette joining colors that meet at distance i."""
    _check_step(c, i)
    edges = set()
    for x in range(c.n):
        a, b = c(x), c(x + i)
        if a != b:
            edges.add(frozenset((a, b)))
    return DominanceGraph(frozenset(range(c.r)), frozenset(edges))


def i_dominant_colors(c: Coloring, i: int) -> set[int]:
    """Colors X such that c(x) != c(x+i) forces X in {c(x), c(x+i)}."""
    _check_step(c, i)
    dominant = set(range(c.r))
    for x in range(c.n):
        a, b = c(x), c(x + i)
        if a != b:
            dominant &= {a, b}
            if not dominant:
                break
    return dominant


def find_pattern(c: Coloring, pattern: Sequence[int]) -> set[int]:
    if not 1 <= len(pattern) <= c.n:
        raise ValueError(f"pattern length must lie in [1, {c.n}]")
    return {j for j in range(c.n) if all(c(j + k) == v for k, v in enumerate(pattern))}


def maximal_strings(c: Coloring, colorset: Iterable[int]) -> list[CyclicInterval]:
    """Maximal runs whose color set is exactly ``colorset`` (one or two colors)."""
    wanted = frozenset(colorset)
    if not 1 <= len(wanted) <= 2:
        raise ValueError("colorset must hold one or two colors")
    n = c.n
    inside = [c(x) in wanted for x in range(n)]
    if all(inside):
        return [CyclicInterval(n, 0, n)] if set(c.colors) == wanted else []
    start = inside.index(False) + 1
    runs = []
    k = 0
    while k < n:
        x = (start + k) % n
        if not inside[x]:
            k += 1
            continue
        length = 0
        while k + length < n and inside[(start + k + length) % n]:
            length += 1
        run = CyclicInterval(n, x, length)
        if {c(y) for y in run.elements()} == wanted:
            runs.append(run)
        k += length
    return sorted(runs, key=lambda iv: iv.start)


def is_periodic(c: Coloring, interval: CyclicInterval, i: int) -> bool:
    """c(x) == c(x+i) whenever x and x+i both sit inside the interval."""
    if i < 1:
        raise ValueError("period must be positive")
    els = interval.elements()
    return all(c(els[k]) == c(els[k + i]) for k in range(len(els) - i))


def coset_color_table(c: Coloring, t: int) -> dict[int, set[int]]:
    """Color sets of the cosets i + <t>, for i in [0, t)."""
    if t < 1 or c.n % t:
        raise ValueError(f"{t} does not divide {c.n}")
    return {i: {c(x) for x in range(i, c.n, t)} for i in range(t)}
