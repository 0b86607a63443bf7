"""Colorings of a ground set and their exact density statistics.

Colors are ids in ``[0, r)``; empty classes are allowed.  When a coloring
stands for the integer interval [1, n], ground index ``i`` means the
integer ``i + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PreconditionError, StructureError
from .ground import as_table, is_closed


@dataclass(frozen=True, eq=False)
class Coloring:
    n: int
    r: int
    assign: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assign, dtype=np.int64).reshape(-1)
        if a.shape[0] != self.n:
            raise StructureError(f"coloring lists {a.shape[0]} colors for a ground set of size {self.n}")
        if self.r < 1:
            raise StructureError("need at least one color")
        if a.size and (a.min() < 0 or a.max() >= self.r):
            raise StructureError(f"color ids must lie in [0, {self.r})")
        a.setflags(write=False)
        object.__setattr__(self, "assign", a)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(int(c) for c in np.bincount(self.assign, minlength=self.r))

    @property
    def densities(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(s, self.n) for s in self.class_sizes)

    def classes(self) -> list[list[int]]:
        return [np.flatnonzero(self.assign == i).tolist() for i in range(self.r)]

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.assign, other.assign)

    __hash__ = None


def from_classes(n: int, classes: Sequence[Sequence[int]]) -> Coloring:
    """Coloring whose i-th class is ``classes[i]``; the classes must partition [0, n)."""
    assign = np.full(n, -1, dtype=np.int64)
    for i, cls in enumerate(classes):
        for x in cls:
            if assign[x] != -1:
                raise StructureError(f"element {x} appears in two classes")
            assign[x] = i
    if (assign < 0).any():
        raise StructureError(f"element {int(np.flatnonzero(assign < 0)[0])} is uncolored")
    return Coloring(n, len(classes), assign)


@dataclass(frozen=True)
class ColoringStats:
    alpha_c: Fraction
    variance: Fraction
    min_density: Fraction


def stats(c: Coloring) -> ColoringStats:
    dens = c.densities
    sq = sum(x * x for x in dens)
    mean = sum(dens) / c.r
    return ColoringStats(
        alpha_c=3 * sq - 1,
        variance=sq / c.r - mean * mean,
        min_density=min(dens),
    )


def equitable_coloring(n: int, r: int, mode: str = "blocks") -> Coloring:
    """Class sizes differ by at most one; the first ``n % r`` classes are the larger ones."""
    if r < 1 or n < r:
        raise PreconditionError(f"need 1 <= r <= n, got n={n}, r={r}")
    if mode == "blocks":
        q, extra = divmod(n, r)
        sizes = [q + (i < extra) for i in range(r)]
        assign = np.repeat(np.arange(r), sizes)
    elif mode == "round-robin":
        assign = np.arange(n) % r
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    return Coloring(n, r, assign)


def rainbow_free_ap_coloring(n: int, t: int) -> Coloring:
    """3t consecutive intervals of length n / 3t over Z_n."""
    if t < 1 or n % (3 * t):
        raise PreconditionError(f"n={n} is not divisible by 3t={3 * t}")
    return Coloring(n, 3 * t, np.arange(n) // (n // (3 * t)))


def subgroup_chain_coloring(G, K: Sequence[int], H: Sequence[int]) -> Coloring:
    """Color K, H \\ K and G \\ H for subgroups K < H < G of index two each."""
    T = as_table(G)
    n = T.shape[0]
    K, H = set(int(x) for x in K), set(int(x) for x in H)
    for name, sub in (("K", K), ("H", H)):
        if not sub or any(not 0 <= x < n for x in sub):
            raise PreconditionError(f"{name} must be a non-empty subset of the group")
        if not is_closed(T, sub):
            raise PreconditionError(f"{name} = {sorted(sub)} is not closed under the group operation")
    if not K <= H:
        raise PreconditionError("K is not contained in H")
    if 2 * len(H) != n or 2 * len(K) != len(H):
        raise PreconditionError(f"indices must both be 2: |K|={len(K)}, |H|={len(H)}, |G|={n}")
    assign = np.full(n, 2, dtype=np.int64)
    assign[sorted(H)] = 1
    assign[sorted(K)] = 0
    return Coloring(n, 3, assign)


def random_coloring(n: int, class_sizes: Sequence[int], seed: int = 0) -> Coloring:
    """Uniform random coloring with exactly the given class sizes."""
    sizes = [int(s) for s in class_sizes]
    if sum(sizes) != n or any(s < 0 for s in sizes):
        raise PreconditionError(f"class sizes {sizes} do not sum to n={n}")
    rng = np.random.default_rng(seed)
    assign = rng.permutation(np.repeat(np.arange(len(sizes)), sizes))
    return Coloring(n, len(sizes), assign)


def layer_coloring(n: int) -> Coloring:
    """Color (x, i) in Y x Z_3 (index 3x + i) by its layer i."""
    if n % 3:
        raise StructureError(f"order {n} is not of the form 3|Y|")
    return Coloring(n, 3, np.arange(n) % 3)
