import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oacolor.errors import NonInvertibleError, PreconditionError, StructureError
from oacolor.ground import (
    AbelianGroup,
    FiniteGroup,
    Quasigroup,
    cyclic_group,
    det_int,
    dihedral_group,
    invert_mod,
    invert_submatrix_mod,
    is_closed,
    matmul_mod,
    smallest_prime_divisor,
    validate_group,
    validate_latin,
)
from oracles import table_is_associative

# order-5 loop with identity 0 that is not a group
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_cyclic_table_passes():
    assert validate_group(cyclic_group(4).to_group())
    assert validate_group(FiniteGroup([[0, 1], [1, 0]]))


def test_nonassociative_loop_fails_with_witness():
    assert not table_is_associative(LOOP5)
    v = validate_group(FiniteGroup.from_table(LOOP5))
    assert not v.ok and "associativity" in v.reason
    a, b, c = v.witness
    t = LOOP5
    assert t[t[a][b]][c] != t[a][t[b][c]]
    assert v.mode == "exhaustive"


def test_missing_identity_and_bad_latin():
    v = validate_group(FiniteGroup([[1, 0], [0, 1]], identity=0))
    assert not v.ok and "identity" in v.reason
    v = validate_group(FiniteGroup([[0, 0], [1, 1]]))
    assert not v.ok and "latin" in v.reason


def test_malformed_table_is_structural():
    with pytest.raises(StructureError):
        validate_group(FiniteGroup(np.zeros((2, 3), dtype=int)))
    with pytest.raises(StructureError):
        validate_latin([[0, 5], [1, 0]])


def test_sampled_associativity_mode():
    G = AbelianGroup((17, 17)).to_group()
    v = validate_group(G)
    assert v.ok and v.mode.startswith("sampled")


def test_validate_latin():
    assert validate_latin(cyclic_group(3).to_group())
    v = validate_latin([[0, 0, 1], [1, 2, 0], [2, 1, 2]])
    assert not v.ok and v.witness == (0,)
    v = validate_latin([[0, 1, 2], [1, 2, 0], [1, 2, 0]])
    assert not v.ok and v.reason.startswith("column 0")


@pytest.mark.parametrize("orders", [(1,), (7,), (2, 4), (3, 3, 2), (2, 2, 2, 5), (10, 100)])
def test_abelian_group_axioms(orders):
    G = AbelianGroup(orders)
    assert G.n == math.prod(orders)
    assert G.n % G.exponent == 0
    assert [G.encode(G.decode(i)) for i in range(G.n)] == list(range(G.n))
    assert len({G.decode(i) for i in range(G.n)}) == G.n
    rng = np.random.default_rng(1)
    for a, b, c in rng.integers(0, G.n, size=(200, 3)).tolist():
        assert G.add(a, G.add(b, c)) == G.add(G.add(a, b), c)
        assert G.add(a, G.neg(a)) == 0
        assert G.add(a, b) == G.add(b, a)
    if G.n <= 64:
        assert validate_group(G.to_group())


def test_abelian_order_cap():
    with pytest.raises(PreconditionError):
        AbelianGroup((2**16 + 1,))
    with pytest.raises(StructureError):
        AbelianGroup((0, 3))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_dihedral_groups_are_groups(m):
    D = dihedral_group(m)
    assert D.n == 2 * m
    assert validate_group(D)
    assert table_is_associative(D.table.tolist())


def test_dihedral_is_nonabelian():
    D = dihedral_group(4)
    assert not np.array_equal(D.table, D.table.T)


def test_closure_and_primes():
    T = cyclic_group(8).table
    assert is_closed(T, {0, 2, 4, 6})
    assert not is_closed(T, {0, 3})
    assert smallest_prime_divisor(59) == 59
    assert smallest_prime_divisor(91) == 7
    assert smallest_prime_divisor(1) is None


def test_invert_submatrix_example():
    inv = invert_submatrix_mod([[1, 1, 1, 1], [1, 2, 3, 4]], [0, 1], 7)
    assert inv == [[2, 6], [6, 1]]
    assert matmul_mod(inv, [[1, 1], [1, 2]], 7) == [[1, 0], [0, 1]]


def test_invert_identity_and_singular():
    for q in (2, 5, 12):
        assert invert_mod([[1, 0], [0, 1]], q) == [[1, 0], [0, 1]]
    with pytest.raises(NonInvertibleError) as exc:
        invert_mod([[2, 0], [0, 2]], 4)
    # witness is gcd(det, q) = gcd(4, 4)
    assert exc.value.gcd == 4


def test_invert_composite_without_unit_in_column():
    # column 0 holds only zero divisors mod 6, yet det = -1
    inv = invert_mod([[2, 1], [3, 1]], 6)
    assert matmul_mod(inv, [[2, 1], [3, 1]], 6) == [[1, 0], [0, 1]]


def test_det_int_matches_permutation_expansion():
    rng = np.random.default_rng(3)
    for m in range(1, 5):
        for _ in range(20):
            M = rng.integers(-9, 10, size=(m, m)).tolist()
            brute = 0
            for perm in itertools.permutations(range(m)):
                inversions = sum(perm[i] > perm[j] for i in range(m) for j in range(i + 1, m))
                brute += (-1) ** inversions * math.prod(M[i][perm[i]] for i in range(m))
            assert det_int(M) == brute


@settings(max_examples=200, deadline=None)
@given(
    m=st.integers(1, 4),
    q=st.integers(2, 97),
    data=st.data(),
)
def test_inverse_times_matrix_is_identity(m, q, data):
    M = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=m, max_size=m), min_size=m, max_size=m))
    if math.gcd(det_int(M), q) != 1:
        with pytest.raises(NonInvertibleError):
            invert_mod(M, q)
        return
    inv = invert_mod(M, q)
    ident = [[int(i == j) for j in range(m)] for i in range(m)]
    assert matmul_mod(inv, M, q) == ident
    assert matmul_mod(M, inv, q) == ident


def test_quasigroup_wraps_table():
    Q = Quasigroup([[1, 0], [0, 1]])
    assert Q.n == 2 and Q.op(0, 0) == 1
    assert validate_latin(Q)
