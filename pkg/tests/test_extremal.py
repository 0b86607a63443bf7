import itertools

import pytest

from oacolor.census import full_census, interval_schur_census
from oacolor.coloring import Coloring
from oacolor.errors import PreconditionError
from oacolor.extremal import min_schur_all_2colorings, min_schur_equitable, search_rainbow_free
from oacolor.ground import cyclic_group
from oacolor.oa import from_linear_equation, schur_triples
from oracles import brute_interval_mono

# minima over all 2-colorings of [1, n], from an independent itertools scan
FROZEN_ALL = {1: 0, 2: 0, 3: 0, 4: 0, 5: 1, 11: 7}
# minima over equitable 2-colorings, same provenance
FROZEN_EQUITABLE = {10: 6, 12: 9, 14: 13, 16: 18}


@pytest.mark.parametrize("n", sorted(FROZEN_ALL))
def test_all_2colorings_frozen(n):
    res = min_schur_all_2colorings(n)
    assert res.objective == FROZEN_ALL[n]
    assert res.instances == 2**n
    assert brute_interval_mono(n, list(res.argmin)) == res.objective


def test_all_2colorings_matches_brute_small():
    for n in range(1, 11):
        brute = min(brute_interval_mono(n, a) for a in itertools.product(range(2), repeat=n))
        assert min_schur_all_2colorings(n).objective == brute


def test_argmin_is_lex_first():
    n = 9
    res = min_schur_all_2colorings(n)
    first = min(a for a in itertools.product(range(2), repeat=n) if brute_interval_mono(n, a) == res.objective)
    assert res.argmin == first


def test_workers_invariance():
    base = min_schur_all_2colorings(16)
    for w in (2, 3, 8):
        other = min_schur_all_2colorings(16, workers=w)
        assert (other.objective, other.argmin, other.instances) == (base.objective, base.argmin, base.instances)


def test_n22_frozen():
    res = min_schur_all_2colorings(22)
    assert res.objective == 36
    assert sorted(res.class_densities()) == [10 / 22, 12 / 22]


def test_sweep_cap():
    with pytest.raises(PreconditionError):
        min_schur_all_2colorings(25)


@pytest.mark.parametrize("n", sorted(FROZEN_EQUITABLE))
def test_equitable_frozen(n):
    res = min_schur_equitable(n, 2)
    assert res.mode == "exhaustive"
    assert res.objective == FROZEN_EQUITABLE[n]
    assert res.argmin.count(0) == res.argmin.count(1)


def test_equitable_three_colors():
    assert min_schur_equitable(6, 3).objective == 0
    res = min_schur_equitable(12, 3)
    assert (res.objective, res.instances) == (0, 34650)


def test_equitable_sampled_is_seeded():
    a = min_schur_equitable(30, 3, cap=10, samples=20_000, seed=3)
    b = min_schur_equitable(30, 3, cap=10, samples=20_000, seed=3)
    assert a.mode == "seeded-random" and a.to_dict() == b.to_dict()
    assert interval_schur_census(Coloring(30, 3, a.argmin)).M == a.objective


def test_relabel_invariance():
    res = min_schur_all_2colorings(12)
    flipped = Coloring(12, 2, [1 - x for x in res.argmin])
    assert interval_schur_census(flipped).M == res.objective


def test_search_rainbow_free():
    oa = schur_triples(cyclic_group(8))
    res = search_rainbow_free(oa, 3, min_class_size=2, seed=0)
    assert res.objective == 0
    c = Coloring(8, 3, res.argmin)
    assert min(c.class_sizes) >= 2
    assert full_census(oa, c).R_strict == 0
    again = search_rainbow_free(oa, 3, min_class_size=2, seed=0)
    assert again.to_dict() == res.to_dict()


def test_search_monochromatic_objective():
    oa = from_linear_equation(cyclic_group(6), [1, 1, 1], 5)
    res = search_rainbow_free(oa, 3, objective="monochromatic")
    assert res.objective == 0


def test_search_maximize_respects_budget():
    oa = schur_triples(cyclic_group(10))
    res = search_rainbow_free(oa, 3, budget=500, maximize=True, seed=1)
    assert full_census(oa, Coloring(10, 3, res.argmin)).R_strict == res.objective
    assert res.objective > 0


def test_search_preconditions():
    oa = schur_triples(cyclic_group(6))
    with pytest.raises(PreconditionError):
        search_rainbow_free(oa, 2)
    with pytest.raises(PreconditionError):
        search_rainbow_free(oa, 3, min_class_size=3)
