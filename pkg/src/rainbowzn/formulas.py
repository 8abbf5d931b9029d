"""Closed-form rainbow numbers of Z_n for the Sidon and Schur equations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint

MAX_ORDER = 2**63 - 1


@lru_cache(maxsize=65536)
def prime_factors(n: int) -> tuple[int, ...]:
    """Prime factors of n with multiplicity, ascending."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return tuple(p for p, e in sorted(factorint(n).items()) for _ in range(e))


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == (n,)


@dataclass(frozen=True)
class FactorizationProfile:
    """Prime factorization with the selected factor p_m.

    ``m`` is 1-based: the smallest index with p_m >= 3, or k when every factor
    is 2. f1 counts the other factors <= 3, f2 the other factors >= 5.
    """

    n: int
    factors: tuple[int, ...]
    m: int
    p_m: int
    f1: int
    f2: int

    @property
    def k(self) -> int:
        return len(self.factors)

    def others(self) -> tuple[int, ...]:
        return self.factors[: self.m - 1] + self.factors[self.m :]

    def to_dict(self) -> dict:
        return {"n": self.n, "factors": list(self.factors), "m": self.m,
                "p_m": self.p_m, "f1": self.f1, "f2": self.f2}


def factor_profile(n: int) -> FactorizationProfile:
    if n < 2:
        raise ValueError(f"factor_profile needs n >= 2, got {n}")
    factors = prime_factors(n)
    k = len(factors)
    m = next((i + 1 for i, p in enumerate(factors) if p >= 3), k)
    others = factors[: m - 1] + factors[m:]
    return FactorizationProfile(
        n=n,
        factors=factors,
        m=m,
        p_m=factors[m - 1],
        f1=sum(1 for p in others if p <= 3),
        f2=sum(1 for p in others if p >= 5),
    )


def _sidon_prime(p: int) -> int:
    # Z_2 and Z_3 have too few elements: rb = p + 1 by convention.
    return p + 1 if p <= 3 else 4


def _schur_prime(p: int) -> int:
    return 3 if p <= 3 else 4


def rb_sidon(n: int) -> int:
    """rb(Z_n, x1 + x2 = x3 + x4)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return 2
    prof = factor_profile(n)
    return _sidon_prime(prof.p_m) + prof.f1 + 2 * prof.f2


def rb_schur(n: int) -> int:
    """rb(Z_n, x1 + x2 = x3)."""
    if n < 2:
        raise ValueError(f"rb_schur needs n >= 2, got {n}")
    factors = prime_factors(n)
    return 2 * (1 - len(factors)) + sum(_schur_prime(p) for p in factors)


def rb_sidon_upper_ub1(n: int) -> int:
    """The coset-reduction upper bound 2(1 - k) + sum of rb(Z_p) over the factors."""
    if n < 2:
        raise ValueError(f"rb_sidon_upper_ub1 needs n >= 2, got {n}")
    factors = prime_factors(n)
    return 2 * (1 - len(factors)) + sum(_sidon_prime(p) for p in factors)
