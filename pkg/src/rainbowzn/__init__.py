"""Rainbow numbers of cyclic groups for the Sidon and Schur equations."""
from .construct import extremal_coloring, lift
from .formulas import factor_profile, rb_schur, rb_sidon, rb_sidon_upper_ub1
from .group import (
    SCHUR,
    SIDON,
    AffineMap,
    Coloring,
    CyclicIndex,
    LinearEquation,
    RainbowWitness,
    apply_affine,
    canonicalize,
    new_coloring,
    solutions,
)
from .solver import count_rainbow_solutions, find_rainbow_witness, is_rainbow_free

__version__ = "0.1.0"

__all__ = [
    "SCHUR",
    "SIDON",
    "AffineMap",
    "Coloring",
    "CyclicIndex",
    "LinearEquation",
    "RainbowWitness",
    "apply_affine",
    "canonicalize",
    "count_rainbow_solutions",
    "extremal_coloring",
    "factor_profile",
    "find_rainbow_witness",
    "is_rainbow_free",
    "lift",
    "new_coloring",
    "rb_schur",
    "rb_sidon",
    "rb_sidon_upper_ub1",
    "solutions",
]
