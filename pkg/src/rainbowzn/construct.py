"""Rainbow-Sidon-free colorings with the maximum number of colors."""
from __future__ import annotations

from .formulas import factor_profile, is_prime
from .group import Coloring


def lift(c: Coloring, p: int) -> Coloring:
    """Blow a coloring of Z_n up to Z_{pn}, keeping it rainbow-Sidon-free.

    Multiples of p inherit c(x/p). The other residues get one fresh color
    when p <= 3; when p >= 5, residues +-1 get one fresh color and the rest
    a second one.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = c.r
    out = []
    for x in range(p * c.n):
        res = x % p
        if res == 0:
            out.append(c.colors[x // p])
        elif p <= 3 or res in (1, p - 1):
            out.append(r)
        else:
            out.append(r + 1)
    return Coloring(tuple(out))


def base_coloring(p: int) -> Coloring:
    """Rainbow-free coloring of Z_p with rb(Z_p) - 1 colors."""
    if p <= 3:
        return Coloring(tuple(range(p)))
    return Coloring((0, 1) + (2,) * (p - 2))


def extremal_coloring(n: int) -> Coloring:
    """A rainbow-Sidon-free coloring of Z_n using rb_sidon(n) - 1 colors."""
    if n < 2:
        raise ValueError(f"extremal_coloring needs n >= 2, got {n}")
    prof = factor_profile(n)
    c = base_coloring(prof.p_m)
    for p in prof.others():
        c = lift(c, p)
    return c
