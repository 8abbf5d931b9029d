import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowzn import (
    SCHUR,
    SIDON,
    AffineMap,
    Coloring,
    CyclicIndex,
    LinearEquation,
    RainbowWitness,
    apply_affine,
    canonicalize,
    find_rainbow_witness,
    new_coloring,
    solutions,
)
from rainbowzn.group import normalize_sidon, units

import oracles


@st.composite
def colorings(draw, max_n=12, max_r=6):
    n = draw(st.integers(1, max_n))
    ids = draw(st.lists(st.integers(0, max_r - 1), min_size=n, max_size=n))
    return new_coloring(n, ids)


@st.composite
def coloring_and_map(draw, max_n=12):
    c = draw(colorings(max_n=max_n))
    scale = draw(st.sampled_from(units(c.n)))
    shift = draw(st.integers(0, c.n - 1))
    return c, AffineMap(c.n, scale, shift)


def test_cyclic_index_arithmetic():
    x = CyclicIndex(7, 12)
    assert x.value == 5
    assert (x + 4).value == 2
    assert (x - 6).value == 6
    assert (-x).value == 2
    assert (3 * x).value == 1
    with pytest.raises(ValueError):
        CyclicIndex(7, 1) + CyclicIndex(5, 1)


@pytest.mark.parametrize(
    "n, ids, colors, r",
    [
        (3, (7, 7, 9), (0, 0, 1), 2),
        (1, (0,), (0,), 1),
        (5, (0, 1, 2, 3, 0), (0, 1, 2, 3, 0), 4),
    ],
)
def test_new_coloring_renumbers(n, ids, colors, r):
    c = new_coloring(n, ids)
    assert c.colors == colors
    assert c.r == r


def test_new_coloring_errors():
    with pytest.raises(ValueError):
        new_coloring(3, (0, 1))
    with pytest.raises(ValueError):
        new_coloring(0, ())
    with pytest.raises(ValueError):
        Coloring((0, 2))  # color 1 unused, not exact


def test_apply_affine_examples():
    assert apply_affine(Coloring((0, 1, 2)), AffineMap(3, 1, 0)).colors == (0, 1, 2)
    c = Coloring((0, 1, 2, 3, 0))
    assert apply_affine(c, AffineMap(5, 2, 0)).colors == (0, 2, 0, 1, 3)
    assert apply_affine(c, AffineMap(5, 1, 1)).colors == (1, 2, 3, 0, 0)


def test_affine_map_rejects_non_unit():
    with pytest.raises(ValueError):
        AffineMap(6, 2, 0)


def test_canonicalize_examples():
    assert canonicalize(Coloring((1, 0))).colors == (0, 1)
    assert canonicalize(Coloring((0, 0, 1))).colors == (0, 0, 1)
    assert canonicalize(Coloring((0,) * 7)).colors == (0,) * 7


@settings(max_examples=60, deadline=None)
@given(colorings(max_n=7, max_r=4))
def test_canonicalize_matches_orbit_oracle(c):
    assert canonicalize(c).colors == min(oracles.orbit(c.colors))


@settings(max_examples=60, deadline=None)
@given(coloring_and_map())
def test_canonicalize_is_orbit_invariant_and_idempotent(cm):
    c, m = cm
    k = canonicalize(c)
    assert canonicalize(k) == k
    assert canonicalize(apply_affine(c, m)) == k


@settings(max_examples=60, deadline=None)
@given(coloring_and_map(), st.data())
def test_affine_composition_law(cm, data):
    c, m1 = cm
    m2 = AffineMap(c.n, data.draw(st.sampled_from(units(c.n))), data.draw(st.integers(0, c.n - 1)))
    assert apply_affine(apply_affine(c, m1), m2) == apply_affine(c, m1.compose(m2))
    assert apply_affine(apply_affine(c, m1), m1.inverse()) == c


@settings(max_examples=60, deadline=None)
@given(coloring_and_map(max_n=11))
def test_affine_invariance_of_sidon_witnesses(cm):
    c, m = cm
    d = apply_affine(c, m)
    w = find_rainbow_witness(c, SIDON)
    wd = find_rainbow_witness(d, SIDON)
    assert (w is None) == (wd is None)
    if w is not None:
        # d(x) = c(m(x)), so m^-1 carries witnesses of c to witnesses of d
        inv = m.inverse()
        moved = RainbowWitness(SIDON, d.n, tuple(inv(x) for x in w.elements), w.colors)
        assert moved.agrees_with(d)


def test_solutions_examples():
    sidon2 = set(solutions(SIDON, 2))
    assert (0, 1, 1, 0) in sidon2
    assert (0, 0, 1, 0) not in sidon2
    assert (1, 1, 2) in set(solutions(SCHUR, 3))
    assert sum(1 for _ in solutions(SIDON, 5)) == 125


@pytest.mark.parametrize("n", [1, 4, 6, 9])
@pytest.mark.parametrize("eq", [SIDON, SCHUR, LinearEquation((2, 1, -1), 1), LinearEquation((2, 2, 2), 0)])
def test_solutions_exact_and_complete(n, eq):
    got = list(solutions(eq, n))
    assert all(eq.residue(xs, n) == 0 for xs in got)
    brute = [xs for xs in itertools.product(range(n), repeat=eq.arity) if eq.residue(xs, n) == 0]
    assert sorted(got) == brute


def test_witness_invariants_enforced():
    RainbowWitness(SIDON, 5, (0, 3, 1, 2), (0, 3, 1, 2))
    with pytest.raises(ValueError):
        RainbowWitness(SIDON, 5, (0, 3, 1, 1), (0, 3, 1, 2))
    with pytest.raises(ValueError):
        RainbowWitness(SIDON, 5, (0, 3, 1, 2), (0, 3, 1, 1))
    with pytest.raises(ValueError):
        RainbowWitness(SIDON, 5, (0, 3, 1, 3), (0, 3, 1, 2))


def test_normalize_sidon():
    assert normalize_sidon((2, 1, 3, 0)) == (0, 3, 1, 2)
    assert normalize_sidon((0, 3, 1, 2)) == (0, 3, 1, 2)


def test_equation_symmetry_detection():
    assert SIDON.preserved_by(AffineMap(7, 3, 5))
    assert SCHUR.preserved_by(AffineMap(7, 3, 0))
    assert not SCHUR.preserved_by(AffineMap(7, 1, 1))
