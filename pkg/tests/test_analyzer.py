import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowzn import SIDON, Coloring, find_rainbow_witness, lift, new_coloring
from rainbowzn.analyzer import (
    CyclicInterval,
    coset_color_table,
    dominance_graph,
    find_pattern,
    i_dominant_colors,
    is_periodic,
    maximal_strings,
)
from rainbowzn.reduce import select_base_coset


def edges(c, i):
    return dominance_graph(c, i).sorted_edges()


def test_dominance_graph_examples():
    assert edges(Coloring((0, 0, 1, 1)), 1) == [(0, 1)]
    assert edges(Coloring((0,) * 5), 2) == []
    assert edges(Coloring((0, 1, 2, 3, 0)), 1) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_i_dominant_examples():
    assert i_dominant_colors(Coloring((0, 0, 0, 0, 1)), 1) == {0, 1}
    assert i_dominant_colors(Coloring((0, 1, 0, 0, 1, 1)), 2) == {0, 1}
    assert i_dominant_colors(Coloring((0, 1, 2, 3, 0)), 1) == set()


def test_step_out_of_range():
    with pytest.raises(ValueError):
        dominance_graph(Coloring((0, 1, 0)), 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 4), min_size=n, max_size=n), st.integers(1, n - 1))))
def test_dominant_colors_are_vertex_covers(data):
    ids, i = data
    c = new_coloring(len(ids), ids)
    g = dominance_graph(c, i)
    covers = {x for x in range(c.r) if all(x in e for e in g.edges)}
    assert i_dominant_colors(c, i) == covers


def random_exact(rng, n, r):
    while True:
        ids = [rng.randrange(r) for _ in range(n)]
        if len(set(ids)) == r:
            return new_coloring(n, ids)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_missing_dominant_color_forces_witness(p):
    rng = random.Random(p)
    for _ in range(150):
        c = random_exact(rng, p, 4)
        for i in range(1, p):
            if not i_dominant_colors(c, i):
                assert find_rainbow_witness(c, SIDON) is not None
            if dominance_graph(c, i).has_2k2():
                assert find_rainbow_witness(c, SIDON) is not None


def test_find_pattern_examples():
    assert find_pattern(Coloring((0, 1, 0, 1)), (0, 1)) == {0, 2}
    assert find_pattern(Coloring((0, 1, 0, 1)), (1, 1)) == set()
    assert find_pattern(Coloring((0, 0, 1)), (1, 0)) == {2}


def window_oracle(c, colorset):
    n = c.n
    found = set()
    for s, length in itertools.product(range(n), range(1, n + 1)):
        els = [(s + k) % n for k in range(length)]
        if {c(x) for x in els} != colorset:
            continue
        if length == n:
            found.add((0, n))
        elif c(s - 1) not in colorset and c(s + length) not in colorset:
            found.add((s, length))
    return sorted(found)


def test_maximal_strings_examples():
    runs = maximal_strings(Coloring((0, 0, 1, 2)), {0})
    assert [(iv.start, iv.end) for iv in runs] == [(0, 1)]
    # c(4) = 0 belongs to the run, so the maximal {0,1}-string is 4,5,0,1,2
    runs = maximal_strings(Coloring((0, 1, 0, 2, 0, 1)), {0, 1})
    assert [(iv.start, iv.end) for iv in runs] == [(4, 2)]
    assert runs[0].elements() == [4, 5, 0, 1, 2]
    runs = maximal_strings(Coloring((0,) * 5), {0})
    assert [(iv.start, iv.length) for iv in runs] == [(0, 5)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=10), st.sets(st.integers(0, 3), min_size=1, max_size=2))
def test_maximal_strings_match_window_scan(ids, colorset):
    c = new_coloring(len(ids), ids)
    got = sorted((iv.start, iv.length) for iv in maximal_strings(c, colorset))
    assert got == window_oracle(c, colorset)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=12), st.integers(0, 3))
def test_single_color_strings_partition_the_class(ids, x):
    c = new_coloring(len(ids), ids)
    if x >= c.r:
        return
    covered = [y for iv in maximal_strings(c, {x}) for y in iv.elements()]
    assert len(covered) == len(set(covered))
    assert sorted(covered) == [y for y in range(c.n) if c(y) == x]


def test_is_periodic_examples():
    c = Coloring((0, 1, 0, 1, 2))
    assert is_periodic(c, CyclicInterval(5, 0, 4), 2)
    assert not is_periodic(c, CyclicInterval(5, 0, 5), 2)
    assert is_periodic(c, CyclicInterval(5, 1, 3), 3)


def test_coset_color_table_examples():
    c = Coloring((0, 1, 2, 1, 0, 1))
    assert coset_color_table(c, 2) == {0: {0, 2}, 1: {1}}
    assert coset_color_table(c, 6) == {i: {v} for i, v in enumerate(c.colors)}
    assert coset_color_table(c, 1) == {0: {0, 1, 2}}
    with pytest.raises(ValueError):
        coset_color_table(c, 4)
    z10 = lift(Coloring((0, 1)), 5)
    assert coset_color_table(z10, 2) == {0: {0, 2, 3}, 1: {1, 2, 3}}


def test_monochromatic_coset_audit():
    """A rainbow-free coloring of Z_{3t}: a coset adding one color outside a
    3-colored base coset is monochromatic."""
    rng = random.Random(3)
    checked = 0
    from rainbowzn import extremal_coloring, apply_affine, is_rainbow_free
    from rainbowzn.group import AffineMap, units

    for n in (9, 12, 15, 18, 21, 27, 30, 36, 45):
        base = extremal_coloring(n)
        for _ in range(10):
            m = AffineMap(n, rng.choice(units(n)), rng.randrange(n))
            c = apply_affine(base, m)
            assert is_rainbow_free(c, SIDON)
            t = n // 3
            j = select_base_coset(c, t)
            shifted = Coloring(tuple(c(x + j) for x in range(n)))
            table = coset_color_table(shifted, t)
            if len(table[0]) != 3:
                continue
            for i in range(t):
                if len(table[i] - table[0]) == 1:
                    assert len(table[i]) == 1
                    checked += 1
    assert checked > 0
