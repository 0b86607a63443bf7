from fractions import Fraction

import numpy as np
import pytest

from oacolor.coloring import (
    Coloring,
    equitable_coloring,
    from_classes,
    layer_coloring,
    rainbow_free_ap_coloring,
    random_coloring,
    stats,
    subgroup_chain_coloring,
)
from oacolor.errors import PreconditionError, StructureError
from oacolor.ground import cyclic_group, dihedral_group


def test_stats_exact():
    c = from_classes(6, [[0, 1, 2], [3, 4], [5]])
    s = stats(c)
    assert c.densities == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    assert s.alpha_c == 3 * (Fraction(1, 4) + Fraction(1, 9) + Fraction(1, 36)) - 1
    assert s.min_density == Fraction(1, 6)
    assert isinstance(s.variance, Fraction)


def test_equitable_stats_alpha_zero_for_three_equal_classes():
    s = stats(equitable_coloring(9, 3))
    assert s.alpha_c == 0 and s.variance == 0


def test_equitable_modes():
    c = equitable_coloring(7, 3)
    assert c.class_sizes == (3, 2, 2)
    assert c.assign.tolist() == [0, 0, 0, 1, 1, 2, 2]
    rr = equitable_coloring(7, 3, "round-robin")
    assert rr.class_sizes == (3, 2, 2)
    with pytest.raises(PreconditionError):
        equitable_coloring(2, 3)
    with pytest.raises(PreconditionError):
        equitable_coloring(6, 3, "stripes")


def test_empty_classes_allowed():
    c = Coloring(4, 3, [0, 0, 1, 1])
    assert c.class_sizes == (2, 2, 0)


def test_rejects_bad_assignments():
    with pytest.raises(StructureError):
        Coloring(3, 2, [0, 1])
    with pytest.raises(StructureError):
        Coloring(3, 2, [0, 1, 2])
    with pytest.raises(StructureError):
        from_classes(3, [[0, 1], [1, 2]])
    with pytest.raises(StructureError):
        from_classes(3, [[0], [1]])


def test_interval_coloring():
    c = rainbow_free_ap_coloring(12, 2)
    assert c.r == 6 and c.classes()[1] == [2, 3]
    with pytest.raises(PreconditionError):
        rainbow_free_ap_coloring(10, 1)


def test_subgroup_chain():
    c = subgroup_chain_coloring(cyclic_group(8), [0, 4], [0, 2, 4, 6])
    assert c.classes() == [[0, 4], [2, 6], [1, 3, 5, 7]]
    d = subgroup_chain_coloring(dihedral_group(4), [0, 2], [0, 1, 2, 3])
    assert d.class_sizes == (2, 2, 4)
    with pytest.raises(PreconditionError, match="not closed"):
        subgroup_chain_coloring(cyclic_group(8), [0, 3], [0, 2, 4, 6])
    with pytest.raises(PreconditionError, match="indices"):
        subgroup_chain_coloring(cyclic_group(8), [0], [0, 4])


def test_random_coloring_reproducible():
    a = random_coloring(30, [10, 10, 10], seed=5)
    b = random_coloring(30, [10, 10, 10], seed=5)
    assert a == b and a.class_sizes == (10, 10, 10)
    assert a != random_coloring(30, [10, 10, 10], seed=6)
    with pytest.raises(PreconditionError):
        random_coloring(30, [10, 10], seed=0)


def test_layer_coloring():
    assert layer_coloring(6).assign.tolist() == [0, 1, 2, 0, 1, 2]
    with pytest.raises(StructureError):
        layer_coloring(4)


def test_assign_read_only():
    c = equitable_coloring(4, 2)
    with pytest.raises(ValueError):
        c.assign[0] = 1
    assert np.array_equal(c.assign, [0, 0, 1, 1])
