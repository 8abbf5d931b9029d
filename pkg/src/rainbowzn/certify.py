"""Exhaustive determination of rainbow numbers by backtracking.

Colorings are enumerated as restricted growth strings (c(0) = 0, each new
color is the smallest unused id), which removes color permutations. A
partial assignment is cut as soon as it contains a rainbow solution among
the assigned positions, or cannot still use every color. On top of that,
partial assignments that cannot be the lexicographically least member of
their orbit under the equation's affine symmetries are cut.

Because the first surviving leaf in depth-first order is the global
lexicographic minimum, the reported counterexample is already canonical
and does not depend on how the search is split across workers.
"""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd

from . import solver
from .group import SCHUR, SIDON, AffineMap, Coloring, LinearEquation, affine_maps, solutions

log = logging.getLogger(__name__)

DESK_BOUNDS = {"sidon": 12, "schur": 14}
DEFAULT_DESK_BOUND = 12
SYMMETRY_THRESHOLD = 64
DEFAULT_PREFIX_DEPTH = 4


class BoundExceeded(RuntimeError):
    pass


class Verdict(str, Enum):
    ALL_HAVE_RAINBOW = "ALL_HAVE_RAINBOW"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass
class SearchStats:
    nodes: int = 0
    canonical_leaves: int = 0
    rainbow_prunes: int = 0
    exactness_prunes: int = 0
    symmetry_prunes: int = 0
    tasks: int = 1
    symmetry_maps: int = 0
    wall_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.canonical_leaves += other.canonical_leaves
        self.rainbow_prunes += other.rainbow_prunes
        self.exactness_prunes += other.exactness_prunes
        self.symmetry_prunes += other.symmetry_prunes

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CertificationReport:
    n: int
    equation: LinearEquation
    r: int
    verdict: Verdict
    counterexample: Coloring | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "equation": self.equation.to_dict(),
            "r": self.r,
            "verdict": self.verdict.value,
            "counterexample": None if self.counterexample is None else list(self.counterexample.colors),
            "stats": self.stats.to_dict(),
        }


@dataclass
class RainbowNumberResult:
    n: int
    equation: LinearEquation
    rb: int
    levels: list[CertificationReport]

    @property
    def lower_bound_certificate(self) -> Coloring | None:
        below = [rep for rep in self.levels if rep.r == self.rb - 1]
        return below[0].counterexample if below else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "equation": self.equation.to_dict(),
            "rb": self.rb,
            "levels": [rep.to_dict() for rep in self.levels],
        }


def symmetry_group(n: int, eq: LinearEquation) -> list[AffineMap]:
    """Non-identity affine maps of Z_n sending solutions of eq to solutions."""
    return [m for m in affine_maps(n) if eq.preserved_by(m) and not (m.scale == 1 % n and m.shift == 0)]


@lru_cache(maxsize=64)
def _partner_sets(n: int, eq: LinearEquation) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each position k, the other elements of every distinct-element
    solution whose largest element is k."""
    by_k: list[set[tuple[int, ...]]] = [set() for _ in range(n)]
    for xs in solutions(eq, n):
        if len(set(xs)) < len(xs):
            continue
        k = max(xs)
        by_k[k].add(tuple(sorted(x for x in xs if x != k)))
    return tuple(tuple(sorted(b)) for b in by_k)


class _Search:
    def __init__(self, n: int, r: int, eq: LinearEquation, symmetry: bool):
        self.n, self.r, self.eq = n, r, eq
        self.parts = _partner_sets(n, eq)
        self.maps = [m.positions().tolist() for m in symmetry_group(n, eq)] if symmetry else []
        self.col = [0] * n
        self.stats = SearchStats(symmetry_maps=len(self.maps))

    def allowed(self, k: int) -> int:
        """Bitmask of colors position k may take without closing a rainbow solution."""
        col = self.col
        allowed = (1 << self.r) - 1
        for others in self.parts[k]:
            mask = 0
            for a in others:
                bit = 1 << col[a]
                if mask & bit:
                    break
                mask |= bit
            else:
                allowed &= mask
                if not allowed:
                    break
        return allowed

    def least_in_orbit(self, k: int) -> bool:
        """False if some symmetry image of the assigned prefix 0..k is smaller."""
        col = self.col
        for pos in self.maps:
            relabel: dict[int, int] = {}
            for x in range(self.n):
                p = pos[x]
                if p > k:
                    break
                w = relabel.get(col[p])
                if w is None:
                    w = relabel[col[p]] = len(relabel)
                if w != col[x]:
                    if w < col[x]:
                        return False
                    break
        return True

    def children(self, k: int, used: int):
        """Yield (color, used') for every admissible assignment of position k."""
        st = self.stats
        allowed = self.allowed(k)
        for v in range(min(used, self.r - 1) + 1):
            if not (allowed >> v) & 1:
                st.rainbow_prunes += 1
                continue
            nu = used + (v == used)
            if self.r - nu > self.n - k - 1:
                st.exactness_prunes += 1
                continue
            self.col[k] = v
            if self.maps and not self.least_in_orbit(k):
                st.symmetry_prunes += 1
                continue
            yield v, nu

    def run(self, k: int, used: int) -> list[int] | None:
        """Depth-first search from position k with col[0..k-1] fixed."""
        self.stats.nodes += 1
        if k == self.n:
            if used == self.r:
                self.stats.canonical_leaves += 1
                return list(self.col)
            return None
        for _v, nu in self.children(k, used):
            found = self.run(k + 1, nu)
            if found is not None:
                return found
        return None

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []

        def walk(k: int, used: int):
            if k == depth or k == self.n:
                out.append(tuple(self.col[:k]))
                return
            for _v, nu in self.children(k, used):
                walk(k + 1, nu)

        walk(1, 1)
        return out

    def run_from(self, prefix: tuple[int, ...]) -> list[int] | None:
        self.col[: len(prefix)] = prefix
        return self.run(len(prefix), max(prefix) + 1)


def _symmetry_default(n: int, eq: LinearEquation) -> bool:
    phi = sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)
    return n * phi >= SYMMETRY_THRESHOLD


def _task(args) -> tuple[list[int] | None, SearchStats]:
    n, r, eq, symmetry, prefix = args
    s = _Search(n, r, eq, symmetry)
    return s.run_from(prefix), s.stats


def desk_bound(eq: LinearEquation) -> int:
    env = os.environ.get("RB_DESK_BOUND")
    if env:
        return int(env)
    return DESK_BOUNDS.get(eq.name or "", DEFAULT_DESK_BOUND)


def _check_bound(n: int, eq: LinearEquation, override: bool) -> None:
    bound = desk_bound(eq)
    if n > bound and not override:
        raise BoundExceeded(
            f"n={n} exceeds the desk bound {bound} for {eq.label}; "
            "pass override=True (this may run long)"
        )


def certify_level(
    n: int,
    r: int,
    eq: LinearEquation = SIDON,
    *,
    threads: int = 1,
    symmetry: bool | None = None,
    prefix_depth: int = DEFAULT_PREFIX_DEPTH,
    override: bool = False,
) -> CertificationReport:
    """Decide whether every exact r-coloring of Z_n has a rainbow solution.

    r = n + 1 is accepted: there are no exact colorings, so the verdict is
    vacuously ALL_HAVE_RAINBOW (the level behind the rb = n + 1 convention).
    """
    if not 1 <= r <= n + 1:
        raise ValueError(f"palette size must lie in [1, {n + 1}], got {r}")
    _check_bound(n, eq, override)
    if r == n + 1:
        return CertificationReport(n, eq, r, Verdict.ALL_HAVE_RAINBOW, None, SearchStats())
    if symmetry is None:
        symmetry = _symmetry_default(n, eq)
    t0 = time.perf_counter()
    root = _Search(n, r, eq, symmetry)
    if threads <= 1 or n <= prefix_depth:
        found = root.run(1, 1)
        stats = root.stats
    else:
        found, stats = _parallel(root, prefix_depth, threads)
    stats.wall_time = time.perf_counter() - t0
    if found is None:
        return CertificationReport(n, eq, r, Verdict.ALL_HAVE_RAINBOW, None, stats)
    cex = Coloring(tuple(found))
    if cex.r != r or not solver.is_rainbow_free(cex, eq):  # pragma: no cover
        raise AssertionError(f"search produced an invalid counterexample {found}")
    return CertificationReport(n, eq, r, Verdict.COUNTEREXAMPLE, cex, stats)


def _parallel(root: _Search, depth: int, threads: int) -> tuple[list[int] | None, SearchStats]:
    prefixes = root.prefixes(depth)
    stats = root.stats
    stats.tasks = len(prefixes)
    best_idx: int | None = None
    best: list[int] | None = None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {
            pool.submit(_task, (root.n, root.r, root.eq, bool(root.maps), pre)): idx
            for idx, pre in enumerate(prefixes)
        }
        for fut in as_completed(futures):
            idx = futures[fut]
            if fut.cancelled():
                continue
            found, sub = fut.result()
            stats.merge(sub)
            if found is not None and (best_idx is None or idx < best_idx):
                best_idx, best = idx, found
                # later prefixes cannot hold the lexicographically least counterexample
                for other, other_idx in futures.items():
                    if other_idx > idx:
                        other.cancel()
    return best, stats


def _check_monotone(levels: list[CertificationReport]) -> None:
    seen_all = False
    for rep in sorted(levels, key=lambda rep: rep.r):
        if rep.verdict is Verdict.ALL_HAVE_RAINBOW:
            seen_all = True
        elif seen_all:
            raise AssertionError(f"level r={rep.r} has a counterexample above a certified level")


def certify_rb(
    n: int,
    eq: LinearEquation = SIDON,
    *,
    threads: int = 1,
    symmetry: bool | None = None,
    override: bool = False,
) -> RainbowNumberResult:
    """Smallest r at which every exact r-coloring has a rainbow solution (n+1 if none)."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_bound(n, eq, override)
    levels = []
    rb = n + 1
    for r in range(1, n + 1):
        rep = certify_level(n, r, eq, threads=threads, symmetry=symmetry, override=True)
        levels.append(rep)
        log.info("n=%d r=%d %s (%d nodes)", n, r, rep.verdict.value, rep.stats.nodes)
        if rep.verdict is Verdict.ALL_HAVE_RAINBOW:
            rb = r
            break
    _check_monotone(levels)
    return RainbowNumberResult(n, eq, rb, levels)


__all__ = [
    "BoundExceeded",
    "CertificationReport",
    "RainbowNumberResult",
    "SCHUR",
    "SIDON",
    "SearchStats",
    "Verdict",
    "certify_level",
    "certify_rb",
    "desk_bound",
    "symmetry_group",
]
