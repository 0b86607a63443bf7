"""Exact color-pattern censuses of orthogonal arrays.

A census maps every color composition ``v`` (an r-vector with ``sum(v) == d``)
to the number ``s(v)`` of rows carrying exactly ``v_i`` entries of color i.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .coloring import Coloring
from .errors import PreconditionError, StructureError, UnsupportedInputError
from .ground import AbelianGroup
from .oa import OrthogonalArray


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``parts``-vectors of non-negative integers summing to ``total``, in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def bounded_vectors(bound: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``parts``-vectors with ``sum <= bound``, ordered by total then lexicographically."""
    for total in range(bound + 1):
        yield from compositions(total, parts)


@dataclass(frozen=True, eq=False)
class PatternCensus:
    d: int
    k: int
    n: int
    r: int
    counts: dict  # composition tuple -> int, every composition present

    def __eq__(self, other):
        if not isinstance(other, PatternCensus):
            return NotImplemented
        return (self.d, self.k, self.n, self.r, self.counts) == (
            other.d, other.k, other.n, other.r, other.counts)

    __hash__ = None

    def s(self, v: Sequence[int]) -> int:
        return self.counts.get(tuple(v), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @cached_property
    def M_i(self) -> tuple[int, ...]:
        return tuple(self.s(tuple(self.d if j == i else 0 for j in range(self.r))) for i in range(self.r))

    @property
    def M(self) -> int:
        return sum(self.M_i)

    @cached_property
    def S_i(self) -> tuple[int, ...]:
        return tuple(sum(s for v, s in self.counts.items() if v[i] == 0) for i in range(self.r))

    @cached_property
    def R_strict(self) -> int:
        """Rows whose entries have pairwise distinct colors."""
        return sum(s for v, s in self.counts.items() if max(v) <= 1)

    @cached_property
    def R_covering(self) -> int:
        """Rows in which every one of the r colors appears."""
        return sum(s for v, s in self.counts.items() if min(v) >= 1)

    @cached_property
    def T21(self) -> int | None:
        """For d = 3: rows with exactly two entries sharing a color."""
        if self.d != 3:
            return None
        return sum(s for v, s in self.counts.items() if max(v) == 2)


def _empty_counts(d: int, r: int) -> dict:
    return {v: 0 for v in compositions(d, r)}


def _count_chunk(colored: np.ndarray, d: int, r: int) -> dict:
    per_color = np.stack([(colored == i).sum(axis=1) for i in range(r)], axis=1)
    weights = (d + 1) ** np.arange(r - 1, -1, -1, dtype=np.int64)
    keys, freq = np.unique(per_color @ weights, return_counts=True)
    out = {}
    for key, f in zip(keys.tolist(), freq.tolist()):
        out[tuple((key // (d + 1) ** (r - 1 - i)) % (d + 1) for i in range(r))] = f
    return out


def full_census(oa: OrthogonalArray, c: Coloring, workers: int = 1) -> PatternCensus:
    """Count every composition by one pass over the rows.

    With ``workers > 1`` the rows are split into contiguous chunks counted
    concurrently; the integer merge makes the result partition-independent.
    """
    if c.n != oa.n:
        raise StructureError(f"coloring has n={c.n} but the array has n={oa.n}")
    colored = c.assign[oa.rows]
    counts = _empty_counts(oa.d, c.r)
    if workers <= 1 or len(oa) < 2:
        parts = [_count_chunk(colored, oa.d, c.r)]
    else:
        chunks = np.array_split(colored, min(workers, len(oa)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ch: _count_chunk(ch, oa.d, c.r), chunks))
    for part in parts:
        for v, f in part.items():
            counts[v] += f
    return PatternCensus(oa.d, oa.k, oa.n, c.r, counts)


def _cyclic_order(G) -> int:
    if isinstance(G, int):
        return G
    if isinstance(G, AbelianGroup) and len(G.orders) == 1:
        return G.orders[0]
    raise UnsupportedInputError("the convolution path needs a cyclic group Z_n")


def convolution_position_counts(G, coeffs: Sequence[int], t: int, c: Coloring) -> np.ndarray:
    """N[i, j, l] = #{x in X_i, y in X_j, z in X_l : a x + b y + c z = t} over Z_n.

    Each class indicator is pushed through multiplication by its
    coefficient, two of them are combined by an exact schoolbook cyclic
    convolution, and the third is read off at ``t - s``.
    """
    n = _cyclic_order(G)
    if len(coeffs) != 3:
        raise UnsupportedInputError(f"the convolution path handles d = 3 only, got d = {len(coeffs)}")
    for a in coeffs:
        if math.gcd(a, n) != 1:
            raise PreconditionError(f"coefficient {a} is not coprime to {n}")
    if c.n != n:
        raise StructureError(f"coloring has n={c.n}, group has order {n}")
    r = c.r
    x = np.arange(n)
    scaled = np.zeros((3, r, n), dtype=np.int64)
    for pos, a in enumerate(coeffs):
        np.add.at(scaled[pos], (c.assign, (a * x) % n), 1)
    target = (t - x) % n  # index s -> t - s
    out = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            full = np.convolve(scaled[0, i], scaled[1, j])  # integer input: direct sum, exact
            cyc = full[:n].copy()
            cyc[: n - 1] += full[n:]
            out[i, j, :] = scaled[2][:, target] @ cyc
    return out


def census_via_convolution(G, coeffs: Sequence[int], t: int, c: Coloring) -> PatternCensus:
    """Same census as ``full_census`` on the equation's array, without listing rows."""
    N = convolution_position_counts(G, coeffs, t, c)
    r = c.r
    counts = _empty_counts(3, r)
    for i in range(r):
        for j in range(r):
            for l in range(r):
                if N[i, j, l]:
                    v = [0] * r
                    v[i] += 1
                    v[j] += 1
                    v[l] += 1
                    counts[tuple(v)] += int(N[i, j, l])
    return PatternCensus(3, 2, c.n, r, counts)


# -- integer interval [1, n] ----------------------------------------------------


def interval_schur_triples(n: int) -> np.ndarray:
    """Ordered solutions of x + y = z in [1, n], as 0-based ground indices."""
    if n < 2:
        return np.zeros((0, 3), dtype=np.int64)
    x, y = np.meshgrid(np.arange(1, n + 1), np.arange(1, n + 1), indexing="ij")
    keep = x + y <= n
    x, y = x[keep], y[keep]
    return np.stack([x - 1, y - 1, x + y - 1], axis=1)


@dataclass(frozen=True)
class IntervalCensus:
    M: int
    R_strict: int
    M_i: tuple[int, ...]


def interval_schur_census(c: Coloring) -> IntervalCensus:
    """Monochromatic and rainbow Schur triples of a coloring of [1, n] (index i is integer i + 1)."""
    tri = c.assign[interval_schur_triples(c.n)]
    mono = (tri[:, 0] == tri[:, 1]) & (tri[:, 1] == tri[:, 2])
    rainbow = (tri[:, 0] != tri[:, 1]) & (tri[:, 1] != tri[:, 2]) & (tri[:, 0] != tri[:, 2])
    M_i = tuple(int(np.count_nonzero(mono & (tri[:, 0] == i))) for i in range(c.r))
    return IntervalCensus(sum(M_i), int(np.count_nonzero(rainbow)), M_i)


def embed_interval_coloring(c: Coloring) -> Coloring:
    """Coloring of Z_{2n}: integers 1..n keep their color, n+1..2n get the new color r."""
    n = c.n
    assign = np.full(2 * n, c.r, dtype=np.int64)
    assign[1 : n + 1] = c.assign
    return Coloring(2 * n, c.r + 1, assign)
