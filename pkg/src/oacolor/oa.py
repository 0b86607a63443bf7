"""Orthogonal arrays: the container, the strength check, and the constructions.

Constructors enumerate their free coordinates in lexicographic order, so the
row order of every array is deterministic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PreconditionError, StructureError
from .ground import (
    AbelianGroup,
    ModMatrix,
    Quasigroup,
    Verdict,
    as_table,
    det_int,
    invert_mod,
    validate_latin,
)

MAX_ROWS = 2**24
MAX_SYSTEM_DEGREE = 12


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """Rows are a ``(len, d)`` int64 array of element indices in ``[0, n)``.

    Equality compares row *sets*; row order is irrelevant.
    """

    d: int
    k: int
    n: int
    rows: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim == 1 and rows.size == 0:
            rows = rows.reshape(0, self.d)
        if rows.ndim != 2 or rows.shape[1] != self.d:
            raise StructureError(f"rows must have shape (N, {self.d}), got {rows.shape}")
        if not 0 <= self.k <= self.d:
            raise StructureError(f"strength {self.k} must lie in [0, {self.d}]")
        if self.n < 1:
            raise StructureError("ground set must be non-empty")
        if self.n**self.k > MAX_ROWS:
            raise PreconditionError(f"n^k = {self.n ** self.k} exceeds the row cap {MAX_ROWS}")
        if rows.size and (rows.min() < 0 or rows.max() >= self.n):
            raise StructureError(f"row entries must lie in [0, {self.n})")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return int(self.rows.shape[0])

    def sorted_rows(self) -> np.ndarray:
        if len(self) == 0:
            return self.rows
        order = np.lexsort(self.rows.T[::-1])
        return self.rows[order]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthogonalArray):
            return NotImplemented
        return (
            self.d == other.d
            and self.n == other.n
            and self.rows.shape == other.rows.shape
            and np.array_equal(self.sorted_rows(), other.sorted_rows())
        )

    __hash__ = None


def verify_strength(oa: OrthogonalArray) -> Verdict:
    """Every k-tuple must occur exactly once in every choice of k columns."""
    d, k, n = oa.d, oa.k, oa.n
    if k == 0:
        if len(oa) == 1:
            return Verdict(True)
        return Verdict(False, f"strength 0 needs exactly one row, found {len(oa)}", ((), (), len(oa)))
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for cols in itertools.combinations(range(d), k):
        keys = oa.rows[:, cols] @ weights
        counts = np.bincount(keys, minlength=n**k)
        bad = np.flatnonzero(counts != 1)
        if len(bad):
            key = int(bad[0])
            tup = tuple(int(key // int(w)) % n for w in weights)
            cnt = int(counts[key])
            return Verdict(False, f"columns {cols}: tuple {tup} occurs {cnt} times", (cols, tup, cnt))
    return Verdict(True)


# -- linear sources -----------------------------------------------------------


def _as_abelian(G) -> AbelianGroup:
    if isinstance(G, AbelianGroup):
        return G
    if isinstance(G, int):
        return AbelianGroup((G,))
    raise StructureError(f"expected an abelian group, got {type(G).__name__}")


def from_linear_system(G, A, b: Sequence[int], provenance: str | None = None) -> OrthogonalArray:
    """All solutions x in G^d of A x = b, an OA(d, d - m).

    The first d - m coordinates run over G lexicographically; the last m are
    solved for with the inverse of the trailing m x m block, component by
    component.
    """
    G = _as_abelian(G)
    e = G.exponent
    raw = A.entries if isinstance(A, ModMatrix) else A
    A = ModMatrix(tuple(tuple(r) for r in raw), e)
    m, d = A.m, A.d
    if d > MAX_SYSTEM_DEGREE:
        raise PreconditionError(f"degree {d} exceeds {MAX_SYSTEM_DEGREE}")
    b = [int(x) for x in b]
    if len(b) != m:
        raise StructureError(f"right-hand side needs {m} entries, got {len(b)}")
    if any(not 0 <= x < G.n for x in b):
        raise StructureError(f"right-hand side entries must be elements of [0, {G.n})")
    for cols in itertools.combinations(range(d), m):
        det = det_int(A.columns(cols))
        g = math.gcd(det, e)
        if g != 1:
            raise PreconditionError(
                f"submatrix on columns {list(cols)} has determinant {det}, gcd {g} with exponent {e}"
            )
    k = d - m
    n = G.n
    if n**k > MAX_ROWS:
        raise PreconditionError(f"n^k = {n ** k} exceeds the row cap {MAX_ROWS}")
    if k:
        free = np.indices((n,) * k).reshape(k, -1).T
    else:
        free = np.zeros((1, 0), dtype=np.int64)
    free_comp = G.decode_array(free)  # (N, k, s)
    b_comp = G.decode_array(np.array(b))  # (m, s)
    solved_comp = np.zeros((free.shape[0], m, len(G.orders)), dtype=np.int64)
    A_free = np.array(A.columns(range(k)), dtype=np.int64).reshape(m, k)
    for t, q in enumerate(G.orders):
        if q == 1:
            continue
        inv = np.array(invert_mod(A.columns(range(k, d)), q), dtype=np.int64)
        rhs = (b_comp[:, t][None, :] - free_comp[:, :, t] @ A_free.T) % q
        solved_comp[:, :, t] = (rhs @ inv.T) % q
    solved = G.encode_array(solved_comp)
    rows = np.concatenate([free, solved], axis=1)
    if provenance is None:
        provenance = f"linear-system A={[list(r) for r in A.entries]} b={b} over Z{list(G.orders)}"
    return OrthogonalArray(d, k, n, rows, provenance)


def from_linear_equation(G, coeffs: Sequence[int], t: int) -> OrthogonalArray:
    """Solutions of a_1 x_1 + ... + a_d x_d = t, an OA(d, d - 1)."""
    G = _as_abelian(G)
    coeffs = [int(a) for a in coeffs]
    if len(coeffs) < 2:
        raise PreconditionError("a linear equation needs at least two unknowns")
    for a in coeffs:
        g = math.gcd(a, G.exponent)
        if g != 1:
            raise PreconditionError(f"coefficient {a} shares factor {g} with exponent {G.exponent}")
    return from_linear_system(
        G, [coeffs], [t], provenance=f"linear-equation coeffs={coeffs} t={t} over Z{list(G.orders)}"
    )


# -- group and quasigroup sources ----------------------------------------------


def schur_triples(S) -> OrthogonalArray:
    """Ordered triples (x, y, x*y); an OA(3, 2) for any quasigroup."""
    T = as_table(S)
    n = T.shape[0]
    x, y = np.divmod(np.arange(n * n), n)
    rows = np.stack([x, y, T[x, y]], axis=1)
    return OrthogonalArray(3, 2, n, rows, f"schur-triples order {n}")


def ap3_triples(G) -> OrthogonalArray:
    """Progressions (a, ax, ax^2); an OA(3, 2) when |G| is odd."""
    T = as_table(G)
    n = T.shape[0]
    if n % 2 == 0:
        raise PreconditionError(f"3-term progressions need odd order, got {n}")
    a, x = np.divmod(np.arange(n * n), n)
    ax = T[a, x]
    rows = np.stack([a, ax, T[ax, x]], axis=1)
    return OrthogonalArray(3, 2, n, rows, f"ap3-triples order {n}")


@dataclass(frozen=True)
class SwapSpec:
    """Exchange layers ``pair`` in the block of rows over U and columns over V."""

    U: frozenset
    V: frozenset
    pair: tuple[int, int] = (0, 1)

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(int(u) for u in self.U))
        object.__setattr__(self, "V", frozenset(int(v) for v in self.V))
        pair = tuple(int(p) for p in self.pair)
        if pair not in ((0, 1), (1, 0), (0, 2), (2, 0)):
            raise PreconditionError(f"layer pair must be (0, 1) or (0, 2), got {pair}")
        object.__setattr__(self, "pair", pair)


def build_z3_extension(Y) -> Quasigroup:
    """Quasigroup on Y x Z_3 with (x, i)*(y, j) = (xy, 2(i + j)); (x, i) has index 3x + i."""
    T = as_table(Y)
    m = T.shape[0]
    X = np.arange(3 * m)
    x, i = np.divmod(X, 3)
    table = 3 * T[x[:, None], x[None, :]] + (2 * (i[:, None] + i[None, :])) % 3
    return Quasigroup(table)


def swap_block(L: Quasigroup, spec: SwapSpec) -> Quasigroup:
    """Swap two Z_3 layers in every entry L((x, i), (y, j)) with x in U, y in V."""
    T = as_table(L)
    n = T.shape[0]
    if n % 3:
        raise StructureError(f"ground set of order {n} is not of the form Y x Z_3")
    m = n // 3
    if any(not 0 <= u < m for u in spec.U | spec.V):
        raise StructureError(f"U and V must be subsets of [0, {m})")
    out = T.copy()
    if spec.U and spec.V:
        rows = np.array([3 * x + i for x in sorted(spec.U) for i in range(3)])
        cols = np.array([3 * y + j for y in sorted(spec.V) for j in range(3)])
        block = out[np.ix_(rows, cols)]
        layer = block % 3
        a, b = spec.pair
        swapped = np.where(layer == a, b, np.where(layer == b, a, layer))
        out[np.ix_(rows, cols)] = block - layer + swapped
    verdict = validate_latin(out)
    if not verdict:
        raise StructureError(f"swap broke the Latin property: {verdict.reason}")
    return Quasigroup(out)
