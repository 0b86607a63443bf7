import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oacolor.census import (
    bounded_vectors,
    census_via_convolution,
    compositions,
    convolution_position_counts,
    embed_interval_coloring,
    full_census,
    interval_schur_census,
)
from oacolor.coloring import Coloring, equitable_coloring, from_classes, random_coloring
from oacolor.errors import UnsupportedInputError
from oacolor.ground import AbelianGroup, cyclic_group, dihedral_group
from oacolor.oa import from_linear_equation, schur_triples
from oracles import brute_interval_mono, brute_mono_rainbow, brute_pattern_counts


def test_compositions_order_and_count():
    comps = list(compositions(3, 3))
    assert len(comps) == 10 and comps == sorted(comps)
    assert comps[0] == (0, 0, 3) and comps[-1] == (3, 0, 0)
    assert list(bounded_vectors(1, 2)) == [(0, 0), (0, 1), (1, 0)]


def check_against_oracle(oa, c):
    census = full_census(oa, c)
    rows = oa.rows.tolist()
    assign = c.assign.tolist()
    brute = brute_pattern_counts(rows, assign, c.r)
    assert {v: s for v, s in census.counts.items() if s} == dict(brute)
    assert set(census.counts) == set(compositions(oa.d, c.r))
    assert census.total == len(oa)
    mono, rainbow = brute_mono_rainbow(rows, assign)
    assert census.M == mono
    if c.r >= oa.d:
        assert census.R_strict == rainbow
    return census


def test_census_matches_brute_force():
    rng = np.random.default_rng(11)
    for n in (5, 6, 8, 9):
        for r in (1, 2, 3, 4):
            if r > n:
                continue
            c = Coloring(n, r, rng.integers(0, r, n))
            for oa in (schur_triples(cyclic_group(n)), from_linear_equation(cyclic_group(n), [1, 1, 1, 1], 0)):
                check_against_oracle(oa, c)
    check_against_oracle(schur_triples(dihedral_group(5)), Coloring(10, 3, rng.integers(0, 3, 10)))


def test_d3_partition_of_rows():
    c = random_coloring(11, [4, 4, 3], seed=2)
    census = full_census(schur_triples(cyclic_group(11)), c)
    assert census.M + census.R_strict + census.T21 == 11**2
    assert full_census(from_linear_equation(cyclic_group(5), [1, 1, 1, 1], 0), equitable_coloring(5, 2)).T21 is None


def test_covering_rainbow():
    oa = from_linear_equation(cyclic_group(3), [1, 1, 1, 1], 0)
    c = from_classes(3, [[0], [1], [2]])
    census = full_census(oa, c)
    brute = sum(1 for row in oa.rows.tolist() if len({c.assign[x] for x in row}) == 3)
    assert census.R_covering == brute
    assert census.R_strict == 0  # four entries can't be pairwise distinct with three colors


def test_workers_do_not_change_result():
    oa = schur_triples(cyclic_group(31))
    c = random_coloring(31, [11, 10, 10], seed=0)
    base = full_census(oa, c)
    for w in (2, 3, 8, 100):
        assert full_census(oa, c, workers=w) == base


CONV_CASES = [
    (n, coeffs, t)
    for n in (5, 7, 12, 16)
    for coeffs, t in (([1, 1, -1], 0), ([1, 1, 1], -1), ([1, -2, 1], 0), ([3, 1, -1], 2))
    if all(math.gcd(a, n) == 1 for a in coeffs)
]


@pytest.mark.parametrize("n,coeffs,t", CONV_CASES)
def test_convolution_path_matches_full(n, coeffs, t):
    G = cyclic_group(n)
    oa = from_linear_equation(G, coeffs, t % n)
    for seed in range(3):
        c = random_coloring(n, [n - n // 3 - n // 3, n // 3, n // 3], seed)
        assert census_via_convolution(G, coeffs, t % n, c) == full_census(oa, c)
        N = convolution_position_counts(G, coeffs, t % n, c)
        assert int(N.sum()) == n * n


def test_convolution_rejects_other_inputs():
    c = equitable_coloring(4, 2)
    with pytest.raises(UnsupportedInputError):
        census_via_convolution(AbelianGroup((2, 2)), [1, 1, 1], 0, c)
    with pytest.raises(UnsupportedInputError):
        census_via_convolution(cyclic_group(4), [1, 1, 1, 1], 0, c)


def test_interval_examples():
    one = Coloring(4, 1, [0, 0, 0, 0])
    assert interval_schur_census(one).M == 6
    rainbow = from_classes(3, [[0], [1], [2]])
    assert interval_schur_census(rainbow).R_strict == 2
    assert interval_schur_census(Coloring(2, 1, [0, 0])).M == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=25))
def test_interval_census_matches_brute(assign):
    c = Coloring(len(assign), 3, assign)
    assert interval_schur_census(c).M == brute_interval_mono(len(assign), assign)


def test_embedding():
    c = from_classes(4, [[0, 3], [1, 2]])
    e = embed_interval_coloring(c)
    assert e.n == 8 and e.r == 3
    assert e.assign.tolist() == [2, 0, 1, 1, 0, 2, 2, 2]


def test_embedding_mono_lower_bound():
    # monochromatic interval triples survive in Z_2n, so M cannot drop
    for assign in itertools.product(range(2), repeat=6):
        c = Coloring(6, 2, assign)
        e = embed_interval_coloring(c)
        z = full_census(schur_triples(cyclic_group(12)), e)
        assert z.M_i[0] + z.M_i[1] >= interval_schur_census(c).M
