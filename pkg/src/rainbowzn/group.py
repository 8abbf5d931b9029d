"""Cyclic-group vocabulary: elements, colorings, linear equations, affine maps.

Everything here is an immutable value object. Colorings are always exact:
every color id in ``range(r)`` occurs at least once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class CyclicIndex:
    """An element of Z_n, always stored reduced."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group order must be positive, got {self.n}")
        object.__setattr__(self, "value", self.value % self.n)

    def _other(self, other) -> int:
        if isinstance(other, CyclicIndex):
            if other.n != self.n:
                raise ValueError("elements of different groups")
            return other.value
        return int(other)

    def __add__(self, other):
        return CyclicIndex(self.n, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return CyclicIndex(self.n, self.value - self._other(other))

    def __rsub__(self, other):
        return CyclicIndex(self.n, self._other(other) - self.value)

    def __neg__(self):
        return CyclicIndex(self.n, -self.value)

    def __mul__(self, k: int):
        return CyclicIndex(self.n, self.value * int(k))

    __rmul__ = __mul__

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


@dataclass(frozen=True)
class Coloring:
    """An exact coloring of Z_n stored as a tuple of dense color ids.

    The labeling is kept as given (``lift`` for instance emits ids that are
    not in first-occurrence order); use :func:`new_coloring` or
    :meth:`normalized` for the first-occurrence form.
    """

    colors: tuple[int, ...]
    r: int = field(init=False)

    def __post_init__(self):
        colors = tuple(int(v) for v in self.colors)
        if not colors:
            raise ValueError("a coloring needs at least one element")
        if min(colors) < 0:
            raise ValueError("color ids must be non-negative")
        r = max(colors) + 1
        if len(set(colors)) != r:
            missing = sorted(set(range(r)) - set(colors))
            raise ValueError(f"coloring is not exact: ids {missing} unused")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return len(self.colors)

    def __call__(self, x) -> int:
        return self.colors[int(x) % len(self.colors)]

    def __len__(self):
        return len(self.colors)

    def __iter__(self):
        return iter(self.colors)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.colors, dtype=np.int64)

    def normalized(self) -> "Coloring":
        return Coloring(tuple(_first_occurrence(self.colors)))

    def color_classes(self) -> list[list[int]]:
        classes: list[list[int]] = [[] for _ in range(self.r)]
        for x, v in enumerate(self.colors):
            classes[v].append(x)
        return classes


def _first_occurrence(ids: Sequence[int]) -> list[int]:
    relabel: dict[int, int] = {}
    out = []
    for v in ids:
        if v not in relabel:
            relabel[v] = len(relabel)
        out.append(relabel[v])
    return out


def new_coloring(n: int, colors: Sequence[int]) -> Coloring:
    """Build a coloring of Z_n, renumbering ids in first-occurrence order."""
    colors = list(colors)
    if not colors:
        raise ValueError("empty color sequence")
    if len(colors) != n:
        raise ValueError(f"expected {n} colors, got {len(colors)}")
    if any(int(v) < 0 for v in colors):
        raise ValueError("color ids must be non-negative")
    return Coloring(tuple(_first_occurrence(int(v) for v in colors)))


@dataclass(frozen=True)
class LinearEquation:
    """a_1 x_1 + ... + a_s x_s = b, interpreted in Z_n."""

    coefficients: tuple[int, ...]
    constant: int = 0
    name: str | None = None

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coefficients)
        if len(coeffs) < 3:
            raise ValueError("equations need at least 3 variables")
        if any(a == 0 for a in coeffs):
            raise ValueError("coefficients must be non-zero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def arity(self) -> int:
        return len(self.coefficients)

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return "custom(" + ",".join(map(str, self.coefficients)) + f";{self.constant})"

    def reduced(self, n: int) -> tuple[tuple[int, ...], int]:
        return tuple(a % n for a in self.coefficients), self.constant % n

    def residue(self, xs: Sequence[int], n: int) -> int:
        return (sum(a * int(x) for a, x in zip(self.coefficients, xs)) - self.constant) % n

    def is_sidon(self, n: int) -> bool:
        return self.reduced(n) == ((1, 1, -1 % n, -1 % n), 0)

    def preserved_by(self, m: "AffineMap") -> bool:
        """True if x -> scale*x + shift maps solutions onto solutions."""
        n = m.n
        coeffs, b = self.reduced(n)
        return (m.scale * b + m.shift * sum(coeffs) - b) % n == 0

    def to_dict(self) -> dict:
        return {"name": self.label, "coefficients": list(self.coefficients), "constant": self.constant}

    def format_solution(self, xs: Sequence[int]) -> str:
        if self.name == "sidon":
            return f"{xs[0]}+{xs[1]}={xs[2]}+{xs[3]}"
        if self.name == "schur":
            return f"{xs[0]}+{xs[1]}={xs[2]}"
        terms = " + ".join(f"{a}*{x}" for a, x in zip(self.coefficients, xs))
        return f"{terms} = {self.constant}"


SIDON = LinearEquation((1, 1, -1, -1), 0, name="sidon")
SCHUR = LinearEquation((1, 1, -1), 0, name="schur")


def equation_by_name(name: str) -> LinearEquation:
    try:
        return {"sidon": SIDON, "schur": SCHUR}[name.lower()]
    except KeyError:
        raise ValueError(f"unknown equation {name!r}; expected 'sidon' or 'schur'") from None


@dataclass(frozen=True)
class AffineMap:
    """x -> scale * x + shift on Z_n, with scale a unit."""

    n: int
    scale: int = 1
    shift: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be positive")
        scale, shift = self.scale % self.n, self.shift % self.n
        if gcd(scale, self.n) != 1:
            raise ValueError(f"scale {self.scale} is not a unit mod {self.n}")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "shift", shift)

    def __call__(self, x) -> int:
        return (self.scale * int(x) + self.shift) % self.n

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self o inner, i.e. x -> self(inner(x))."""
        if inner.n != self.n:
            raise ValueError("maps on different groups")
        return AffineMap(self.n, self.scale * inner.scale, self.scale * inner.shift + self.shift)

    def inverse(self) -> "AffineMap":
        inv = pow(self.scale, -1, self.n) if self.n > 1 else 0
        return AffineMap(self.n, inv, -inv * self.shift)

    def positions(self) -> np.ndarray:
        return (self.scale * np.arange(self.n) + self.shift) % self.n


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [i for i in range(1, n) if gcd(i, n) == 1]


def affine_maps(n: int) -> Iterator[AffineMap]:
    for i in units(n):
        for j in range(n):
            yield AffineMap(n, i, j)


def apply_affine(c: Coloring, m: AffineMap) -> Coloring:
    """The coloring x -> c(scale*x + shift); same labeling, same palette."""
    if m.n != c.n:
        raise ValueError(f"map acts on Z_{m.n}, coloring lives on Z_{c.n}")
    colors = c.colors
    return Coloring(tuple(colors[m(x)] for x in range(c.n)))


def _relabel_rows(rows: np.ndarray, r: int) -> np.ndarray:
    """First-occurrence relabeling of every row of an integer matrix."""
    m, n = rows.shape
    first = np.full((m, r), n, dtype=np.int64)
    for v in range(r):
        hit = rows == v
        first[:, v] = np.where(hit.any(axis=1), hit.argmax(axis=1), n)
    order = np.argsort(first, axis=1, kind="stable")
    label = np.empty_like(order)
    np.put_along_axis(label, order, np.arange(r)[None, :].repeat(m, axis=0), axis=1)
    return np.take_along_axis(label, rows, axis=1)


def canonicalize(c: Coloring) -> Coloring:
    """Lexicographically least first-occurrence form over the full affine orbit."""
    n = c.n
    pos = np.array([m.positions() for m in affine_maps(n)])
    images = c.as_array()[pos]
    relabeled = _relabel_rows(images, c.r)
    best = relabeled[np.lexsort(relabeled.T[::-1])[0]]
    return Coloring(tuple(int(v) for v in best))


def solutions(eq: LinearEquation, n: int) -> Iterator[tuple[int, ...]]:
    """All tuples in Z_n^s satisfying eq, in lexicographic order.

    When the last coefficient is a unit the last variable is solved for,
    so the cost is n^(s-1) rather than n^s.
    """
    coeffs, b = eq.reduced(n)
    last = coeffs[-1]
    head = coeffs[:-1]
    if n > 1 and gcd(last, n) == 1:
        inv = pow(last, -1, n)
        for xs in itertools.product(range(n), repeat=len(head)):
            partial = sum(a * x for a, x in zip(head, xs))
            yield xs + (((b - partial) * inv) % n,)
    else:
        for xs in itertools.product(range(n), repeat=len(coeffs)):
            if (sum(a * x for a, x in zip(coeffs, xs)) - b) % n == 0:
                yield xs


@dataclass(frozen=True)
class RainbowWitness:
    """A solution with pairwise distinct elements and pairwise distinct colors."""

    equation: LinearEquation
    n: int
    elements: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(x) % self.n for x in self.elements)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "colors", tuple(int(v) for v in self.colors))
        if len(els) != self.equation.arity or len(self.colors) != len(els):
            raise ValueError("witness size does not match equation arity")
        if self.equation.residue(els, self.n):
            raise ValueError(f"{els} does not solve {self.equation.label} in Z_{self.n}")
        if len(set(els)) != len(els):
            raise ValueError(f"witness elements {els} are not distinct")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError(f"witness colors {self.colors} are not distinct")

    @property
    def indices(self) -> tuple[CyclicIndex, ...]:
        return tuple(CyclicIndex(self.n, x) for x in self.elements)

    def agrees_with(self, c: Coloring) -> bool:
        return c.n == self.n and all(c(x) == v for x, v in zip(self.elements, self.colors))

    def __str__(self):
        return f"{self.equation.format_solution(self.elements)} colors {self.colors}"

    def to_dict(self) -> dict:
        return {
            "equation": self.equation.label,
            "n": self.n,
            "elements": list(self.elements),
            "colors": list(self.colors),
        }


def witness_for(c: Coloring, eq: LinearEquation, elements: Sequence[int]) -> RainbowWitness:
    """Build (and thereby validate) a witness reading colors off ``c``."""
    return RainbowWitness(eq, c.n, tuple(elements), tuple(c(x) for x in elements))


def normalize_sidon(xs: Sequence[int]) -> tuple[int, int, int, int]:
    """Representative of a Sidon tuple under its 8 variable symmetries.

    Returns (x1, x2, x3, x4) with x1 < x2, x3 < x4 and x1 < x3.
    """
    a, b = sorted(xs[:2])
    c, d = sorted(xs[2:])
    if c < a:
        a, b, c, d = c, d, a, b
    return a, b, c, d
