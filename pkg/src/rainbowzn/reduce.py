"""Coset reduction and constructive rainbow Sidon witnesses.

A coloring of Z_n is collapsed onto Z_t (t = n/p) by looking at the cosets
R_x = x + <t>. After shifting so that the coset with the most colors sits at
R_0, every other coset adds at most one color outside c(R_0) (or a rainbow
solution falls out directly). The child coloring records that extra color,
or the sentinel ``alpha`` when there is none. Rainbow solutions of the child
lift back to rainbow solutions of the parent.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from .formulas import is_prime, prime_factors
from .group import SCHUR, SIDON, Coloring, RainbowWitness, new_coloring, normalize_sidon, witness_for
from . import solver

log = logging.getLogger(__name__)


class PreconditionFailed(ValueError):
    """A lifting step cannot be carried out; the caller should fall back."""


@dataclass(frozen=True)
class ReductionStep:
    """One coset reduction of ``parent`` (on Z_n) to ``child`` (on Z_t).

    ``shift`` is the coset index moved to 0, i.e. c'(x) = c(x + shift).
    Child color ids below ``alpha`` stand for the parent colors in
    ``child_colors``; ``alpha`` marks cosets whose colors all lie in
    ``base_colors``. ``representatives`` maps each non-alpha child position x
    to the smallest parent element of the coset R_{x+shift} carrying its
    extra color.
    """

    parent: Coloring
    p: int
    t: int
    shift: int
    child: Coloring
    alpha: int
    child_colors: tuple[int, ...]
    base_colors: frozenset[int]
    representatives: dict[int, int]

    @property
    def n(self) -> int:
        return self.parent.n

    def shifted(self, x: int) -> int:
        """c'(x)."""
        return self.parent(x + self.shift)

    def bookkeeping_holds(self) -> bool:
        return self.parent.r == len(self.base_colors) + self.child.r - 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "t": self.t,
            "j": self.shift,
            "alpha": self.alpha,
            "base_colors": sorted(self.base_colors),
            "child": {"n": self.t, "r": self.child.r, "colors": list(self.child.colors)},
            "child_colors": {str(k): v for k, v in enumerate(self.child_colors)},
            "representatives": {str(x): y for x, y in sorted(self.representatives.items())},
        }


def _check_divisor(c: Coloring, t: int) -> int:
    if t < 1 or c.n % t:
        raise ValueError(f"{t} does not divide {c.n}")
    p = c.n // t
    if not is_prime(p):
        raise ValueError(f"n/t = {p} is not prime")
    return p


def _cosets(c: Coloring, t: int) -> list[set[int]]:
    return [{c(x) for x in range(i, c.n, t)} for i in range(t)]


def sidon_witness(c: Coloring, xs) -> RainbowWitness:
    return witness_for(c, SIDON, normalize_sidon(xs))


def select_base_coset(c: Coloring, t: int) -> int | RainbowWitness:
    """Index j of a coset with |c(R_i) minus c(R_j)| <= 1 for every i.

    j is the smallest index among the cosets with the most colors. If some
    coset adds two colors, a rainbow Sidon solution is returned instead.
    """
    _check_divisor(c, t)
    table = _cosets(c, t)
    j = max(range(t), key=lambda i: (len(table[i]), -i))
    for i in range(t):
        extra = table[i] - table[j]
        if len(extra) < 2:
            continue
        a, b = sorted(extra)[:2]
        x1 = next(x for x in range(i, c.n, t) if c(x) == a)
        x2 = next(x for x in range(i, c.n, t) if c(x) == b)
        for x3 in range(j, c.n, t):
            x4 = (x1 + x3 - x2) % c.n
            if c(x4) != c(x3):
                return sidon_witness(c, (x1, x3, x2, x4))
        raise AssertionError("coset of maximal size is monochromatic")  # pragma: no cover
    return j


def reduce_once(c: Coloring, p: int) -> ReductionStep | RainbowWitness:
    if not is_prime(p) or c.n % p:
        raise ValueError(f"{p} is not a prime divisor of {c.n}")
    t = c.n // p
    sel = select_base_coset(c, t)
    if isinstance(sel, RainbowWitness):
        return sel
    j = sel
    n = c.n
    base = {c(j + k * t) for k in range(p)}
    ids: dict[int, int] = {}
    child_raw: list[int | None] = []
    reps: dict[int, int] = {}
    for x in range(t):
        members = [(x + j + k * t) % n for k in range(p)]
        extra = {c(y) for y in members} - base
        if not extra:
            child_raw.append(None)
            continue
        (colour,) = extra
        ids.setdefault(colour, len(ids))
        child_raw.append(ids[colour])
        reps[x] = min(y for y in members if c(y) == colour)
    alpha = len(ids)
    child = Coloring(tuple(alpha if v is None else v for v in child_raw))
    return ReductionStep(
        parent=c,
        p=p,
        t=t,
        shift=j,
        child=child,
        alpha=alpha,
        child_colors=tuple(sorted(ids, key=ids.get)),
        base_colors=frozenset(base),
        representatives=reps,
    )


def lift_sidon_witness(step: ReductionStep, w: RainbowWitness) -> RainbowWitness:
    """Turn a rainbow Sidon solution of the child into one of the parent."""
    solver.validate_witness(w, step.child)
    xs = list(w.elements)
    cols = [step.child(x) for x in xs]
    if cols.count(step.alpha) > 1:  # pragma: no cover - impossible for a valid witness
        raise ValueError("witness uses the sentinel twice")
    if step.alpha in cols:
        k = cols.index(step.alpha)
        # move the alpha-colored variable to x4 with a Sidon symmetry
        xs = {0: [xs[2], xs[3], xs[1], xs[0]], 1: [xs[2], xs[3], xs[0], xs[1]],
              2: [xs[0], xs[1], xs[3], xs[2]], 3: xs}[k]
    try:
        y1, y2, y3 = (step.representatives[x] for x in xs[:3])
    except KeyError as exc:
        raise ValueError(f"no representative for child position {exc}; corrupted step") from None
    # shifts cancel: (y1 - j) + (y2 - j) - (y3 - j) + j = y1 + y2 - y3
    y4 = (y1 + y2 - y3) % step.n
    return sidon_witness(step.parent, (y1, y2, y3, y4))


def _local_sidon(c: Coloring, elements: list[int]) -> RainbowWitness | None:
    els = sorted(set(elements))
    n = c.n
    for a_i, a in enumerate(els):
        for b in els[a_i + 1 :]:
            for d_i, d in enumerate(els):
                for e in els[d_i + 1 :]:
                    if len({a, b, d, e}) == 4 and (a + b - d - e) % n == 0:
                        if len({c(a), c(b), c(d), c(e)}) == 4:
                            return sidon_witness(c, (a, b, d, e))
    return None


def lift_schur_witness(step: ReductionStep, w: RainbowWitness) -> RainbowWitness:
    """Build a parent Sidon witness from a rainbow Schur solution of the child.

    Applies when p = 3, |c'(R_0)| = 3 and the child is Sidon-rainbow-free.
    Raises :class:`PreconditionFailed` when the construction does not apply.
    """
    if step.p != 3:
        raise PreconditionFailed("Schur lifting needs p = 3")
    if len(step.base_colors) != 3:
        raise PreconditionFailed(f"|c'(R_0)| = {len(step.base_colors)}, need 3")
    solver.validate_witness(w, step.child)
    if w.equation != SCHUR:
        raise ValueError("expected a Schur witness")
    n, t, j = step.n, step.t, step.shift
    i, jj, k = w.elements
    if step.child(i) == step.alpha:
        i, jj = jj, i
    cprime = step.shifted

    def pick(x: int) -> int:
        # element of R_x in shifted coordinates
        if step.child(x) != step.alpha:
            return (step.representatives[x] - j) % n
        return x

    yj, yk = pick(jj), pick(k)
    extra_i = step.child_colors[step.child(i)]
    avoid = {cprime(yj), cprime(yk), extra_i}
    s0 = next((z for z in range(0, n, t) if cprime(z) not in avoid), None)
    if s0 is None:
        raise PreconditionFailed("no base element avoids the three colors")
    yi = (yk + s0 - yj) % n
    parent_els = [(y + j) % n for y in (yi, yj, yk, s0)]
    if cprime(yi) == extra_i:
        return sidon_witness(step.parent, parent_els)
    # |c'(R_i)| > 1: the base coset and R_i already hold a rainbow solution.
    local = _local_sidon(step.parent, [(x + j) % n for x in range(0, n, t)]
                         + [(x + j) % n for x in range(i, n, t)])
    if local is None:
        raise PreconditionFailed(f"coset R_{i} is not monochromatic")
    return local


def _base_coset_witness(step: ReductionStep) -> RainbowWitness | None:
    """Rainbow solution inside R_j itself, a copy of Z_p."""
    if len(step.base_colors) < 4:
        return None
    n, t, j = step.n, step.t, step.shift
    restricted = new_coloring(step.p, [step.parent(j + k * t) for k in range(step.p)])
    w = solver.find_rainbow_witness(restricted, SIDON)
    if w is None:
        return None
    return sidon_witness(step.parent, [(j + k * t) % n for k in w.elements])


def find_witness_by_reduction(
    c: Coloring,
    on_step: Callable[[ReductionStep], None] | None = None,
) -> RainbowWitness | None:
    """Rainbow Sidon witness found by recursive coset reduction.

    Falls back to brute force at prime orders and whenever a lifting
    precondition fails, so None means no witness exists at all.
    """
    n = c.n
    if c.r < 4:
        return None
    if n < 4 or is_prime(n):
        return solver.find_rainbow_witness(c, SIDON)
    schur_path = n % 9 == 0
    p = 3 if schur_path else max(prime_factors(n))
    out = reduce_once(c, p)
    if isinstance(out, RainbowWitness):
        return out
    step = out
    if on_step is not None:
        on_step(step)
    w = _base_coset_witness(step)
    if w is not None:
        return w
    child_w = find_witness_by_reduction(step.child, on_step)
    if child_w is not None:
        return solver.validate_witness(lift_sidon_witness(step, child_w), c)
    if schur_path:
        schur_w = solver.find_rainbow_witness(step.child, SCHUR)
        if schur_w is not None:
            try:
                return solver.validate_witness(lift_schur_witness(step, schur_w), c)
            except PreconditionFailed as exc:
                log.debug("Schur lifting on Z_%d skipped: %s", n, exc)
    return solver.find_rainbow_witness(c, SIDON)
