"""Desk-scale extremal experiments on Schur triples and rainbow-free colorings.

Interval colorings follow the convention of :mod:`oacolor.coloring`: ground
index ``i`` stands for the integer ``i + 1``.  Ties between optimal
colorings are broken by the lexicographically smallest assignment.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .census import full_census, interval_schur_census, interval_schur_triples
from .coloring import Coloring, equitable_coloring, random_coloring
from .errors import PreconditionError
from .oa import OrthogonalArray

MAX_GRAY_N = 24
SPOT_CHECK_EVERY = 2**12
EQUITABLE_EXHAUSTIVE_CAP = 10**7
DEFAULT_SAMPLES = 100_000


@dataclass
class SearchResult:
    objective: int
    argmin: tuple[int, ...]
    instances: int
    mode: str
    seed: int | None = None
    n: int = 0
    r: int = 0
    elapsed: float = field(default=0.0, compare=False)
    extra: dict = field(default_factory=dict)

    def class_densities(self) -> list[float]:
        counts = np.bincount(np.asarray(self.argmin, dtype=np.int64), minlength=self.r)
        return [c / self.n for c in counts.tolist()]

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "r": self.r,
            "mode": self.mode,
            "objective": self.objective,
            "argmin": list(self.argmin),
            "instances": self.instances,
            "seed": self.seed,
        }
        out.update(self.extra)
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


# -- all 2-colorings of [1, n] by Gray code ---------------------------------------


@numba.njit(cache=True, nogil=True)
def _mono_through(col, n, x):
    # monochromatic triples (a, b, a + b) of [1, n] that contain x, each counted once
    s = 0
    cx = col[x]
    for b in range(1, n - x + 1):
        if col[b] == cx and col[x + b] == cx:
            s += 1
    for a in range(1, n - x + 1):
        if a != x and col[a] == cx and col[a + x] == cx:
            s += 1
    for a in range(1, x):
        if col[a] == cx and col[x - a] == cx:
            s += 1
    return s


@numba.njit(cache=True, nogil=True)
def _mono_total(col, n):
    s = 0
    for x in range(1, n + 1):
        for y in range(1, n - x + 1):
            if col[x] == col[y] and col[y] == col[x + y]:
                s += 1
    return s


@numba.njit(cache=True, nogil=True)
def _lex_key(col, n):
    key = 0
    for x in range(1, n + 1):
        key = key * 2 + col[x]
    return key


@numba.njit(cache=True, nogil=True)
def _gray_sweep(n, low_bits, prefix, spot_every, spot_masks, spot_vals):
    col = np.zeros(n + 1, dtype=np.int64)
    mask = prefix << low_bits
    for x in range(1, n + 1):
        col[x] = (mask >> (x - 1)) & 1
    m = _mono_total(col, n)
    best = m
    best_key = _lex_key(col, n)
    spot_masks[0] = mask
    spot_vals[0] = m
    n_spots = 1
    total = 1 << low_bits
    for i in range(1, total):
        bit = 0
        while not (i >> bit) & 1:
            bit += 1
        x = bit + 1
        before = _mono_through(col, n, x)
        col[x] ^= 1
        mask ^= 1 << bit
        m += _mono_through(col, n, x) - before
        if i % spot_every == 0:
            spot_masks[n_spots] = mask
            spot_vals[n_spots] = m
            n_spots += 1
        if m <= best:
            key = _lex_key(col, n)
            if m < best or key < best_key:
                best = m
                best_key = key
    return best, best_key, n_spots


def _key_to_assign(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (n - x)) & 1 for x in range(1, n + 1))


def _mask_to_coloring(mask: int, n: int) -> Coloring:
    return Coloring(n, 2, [(mask >> (x - 1)) & 1 for x in range(1, n + 1)])


def min_schur_all_2colorings(n: int, workers: int = 1) -> SearchResult:
    """Exact minimum of monochromatic Schur triples over all 2-colorings of [1, n].

    The colorings are visited in Gray-code order with an O(n) update per
    flip.  With ``workers > 1`` the top bits are fixed per worker; the merge
    keeps the lexicographically smallest optimum, so the result does not
    depend on the partition.  Incremental counts are re-derived from scratch
    every 4096 steps and at the optimum.
    """
    if not 1 <= n <= MAX_GRAY_N:
        raise PreconditionError(f"n={n} outside [1, {MAX_GRAY_N}]")
    start = time.perf_counter()
    p = 0
    while (1 << (p + 1)) <= max(workers, 1) and p + 1 <= n:
        p += 1
    low = n - p
    n_spot = ((1 << low) - 1) // SPOT_CHECK_EVERY + 1

    def run(prefix):
        masks = np.zeros(n_spot, dtype=np.int64)
        vals = np.zeros(n_spot, dtype=np.int64)
        best, key, used = _gray_sweep(n, low, prefix, SPOT_CHECK_EVERY, masks, vals)
        return int(best), int(key), masks[:used], vals[:used]

    if p == 0:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(1 << p)))
    for _, _, masks, vals in parts:
        for mask, val in zip(masks.tolist(), vals.tolist()):
            fresh = interval_schur_census(_mask_to_coloring(mask, n)).M
            if fresh != val:
                raise RuntimeError(f"incremental count {val} != recount {fresh} at mask {mask}")
    best, key = min((b, k) for b, k, _, _ in parts)
    argmin = _key_to_assign(key, n)
    recount = interval_schur_census(Coloring(n, 2, argmin)).M
    if recount != best:
        raise RuntimeError(f"reported minimum {best} but recount gives {recount}")
    # the number of spot checks depends on the partition, so it stays out of the result
    return SearchResult(best, argmin, 1 << n, "exhaustive", None, n, 2, time.perf_counter() - start)


# -- equitable r-colorings of [1, n] -----------------------------------------------


@numba.njit(cache=True)
def _multiset_sweep(start, x, y, z):
    a = start.copy()
    m_len = a.shape[0]
    best = -1
    best_a = a.copy()
    count = 0
    while True:
        m = 0
        for t in range(x.shape[0]):
            if a[x[t]] == a[y[t]] and a[y[t]] == a[z[t]]:
                m += 1
        count += 1
        if best < 0 or m < best:
            best = m
            best_a[:] = a
        # next permutation in lexicographic order
        i = m_len - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            break
        j = m_len - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        lo, hi = i + 1, m_len - 1
        while lo < hi:
            a[lo], a[hi] = a[hi], a[lo]
            lo += 1
            hi -= 1
    return best, best_a, count


def min_schur_equitable(n: int, r: int, cap: int = EQUITABLE_EXHAUSTIVE_CAP,
                        samples: int = DEFAULT_SAMPLES, seed: int = 0) -> SearchResult:
    """Minimum monochromatic Schur triples over equitable r-colorings of [1, n].

    Class sizes are fixed to the block-equitable vector (larger classes
    first); relabelling colors covers every other equitable size vector.
    Exhaustive when the multinomial count is at most ``cap``, otherwise
    ``samples`` seeded random colorings.
    """
    start = time.perf_counter()
    sizes = equitable_coloring(n, r).class_sizes
    total = math.factorial(n)
    for s in sizes:
        total //= math.factorial(s)
    tri = interval_schur_triples(n)
    x, y, z = (np.ascontiguousarray(tri[:, i]) for i in range(3))
    if total <= cap:
        first = np.repeat(np.arange(r, dtype=np.int64), sizes)
        best, best_a, count = _multiset_sweep(first, x, y, z)
        mode, used_seed = "exhaustive", None
        argmin = tuple(int(v) for v in best_a)
        best = int(best)
    else:
        mode, used_seed = "seeded-random", seed
        best, argmin, count = None, None, 0
        rng = np.random.default_rng(seed)
        base = np.repeat(np.arange(r, dtype=np.int64), sizes)
        for lo in range(0, samples, 10_000):
            batch = rng.permuted(np.tile(base, (min(10_000, samples - lo), 1)), axis=1)
            mono = ((batch[:, x] == batch[:, y]) & (batch[:, y] == batch[:, z])).sum(axis=1)
            for row in np.flatnonzero(mono == mono.min()):
                cand = (int(mono[row]), tuple(batch[row].tolist()))
                if best is None or cand < (best, argmin):
                    best, argmin = cand
            count += len(batch)
    recount = interval_schur_census(Coloring(n, r, argmin)).M
    if recount != best:
        raise RuntimeError(f"reported minimum {best} but recount gives {recount}")
    return SearchResult(best, argmin, int(count), mode, used_seed, n, r,
                        time.perf_counter() - start, {"class_sizes": list(sizes)})


# -- budgeted local search over an orthogonal array -------------------------------


def _row_flags(colored: np.ndarray, objective: str) -> np.ndarray:
    if objective == "rainbow":
        d = colored.shape[1]
        srt = np.sort(colored, axis=1)
        return (np.diff(srt, axis=1) != 0).all(axis=1) if d > 1 else np.ones(len(colored), bool)
    return (colored == colored[:, :1]).all(axis=1)


def search_rainbow_free(oa: OrthogonalArray, r: int, budget: int = 20_000, seed: int = 0,
                        objective: str = "rainbow", maximize: bool = False,
                        min_class_size: int = 1) -> SearchResult:
    """Randomized first-improvement descent on the count of rainbow (strict) or
    monochromatic rows.

    Moves are single recolorings and swaps of two differently colored
    elements, tried in a shuffled order; a full pass without improvement
    triggers a restart from a fresh random coloring.  Every class keeps at
    least ``min_class_size`` elements.  ``budget`` bounds the number of move
    evaluations.
    """
    if r < 3:
        raise PreconditionError(f"needs r >= 3, got {r}")
    if objective not in ("rainbow", "monochromatic"):
        raise PreconditionError(f"unknown objective {objective!r}")
    n = oa.n
    if min_class_size * r > n:
        raise PreconditionError(f"cannot give {r} classes at least {min_class_size} of {n} elements")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    sign = -1 if maximize else 1
    rows = oa.rows
    incidence = [np.flatnonzero((rows == x).any(axis=1)) for x in range(n)]

    def affected(elems):
        if len(elems) == 1:
            return incidence[elems[0]]
        return np.union1d(incidence[elems[0]], incidence[elems[1]])

    def score(assign, idx):
        return int(_row_flags(assign[rows[idx]], objective).sum())

    best_val, best_assign = None, None
    evals = restarts = 0
    q, extra = divmod(n, r)
    sizes = [q + (i < extra) for i in range(r)]
    while evals < budget:
        assign = random_coloring(n, sizes, int(rng.integers(2**32))).assign.copy()
        counts = np.bincount(assign, minlength=r)
        value = int(_row_flags(assign[rows], objective).sum())
        restarts += 1
        improved = True
        while improved and evals < budget:
            improved = False
            if best_val is None or sign * value < sign * best_val:
                best_val, best_assign = value, assign.copy()
            if not maximize and value == 0:
                break
            moves = [(x, c) for x in range(n) for c in range(r) if c != assign[x]]
            moves += [(x, -1 - y) for x in range(n) for y in range(x + 1, n) if assign[x] != assign[y]]
            for mi in rng.permutation(len(moves)):
                if evals >= budget:
                    break
                x, c = moves[mi]
                evals += 1
                if c >= 0:
                    if counts[assign[x]] - 1 < min_class_size:
                        continue
                    elems, new = [x], {x: c}
                else:
                    y = -1 - c
                    elems, new = [x, y], {x: assign[y], y: assign[x]}
                idx = affected(elems)
                before = score(assign, idx)
                old = {e: assign[e] for e in elems}
                for e, v in new.items():
                    assign[e] = v
                delta = score(assign, idx) - before
                if sign * delta < 0:
                    if c >= 0:
                        counts[old[x]] -= 1
                        counts[c] += 1
                    value += delta
                    improved = True
                    break
                for e, v in old.items():
                    assign[e] = v
        if best_val is None or sign * value < sign * best_val:
            best_val, best_assign = value, assign.copy()
        if not maximize and best_val == 0:
            break
    coloring = Coloring(n, r, best_assign)
    census = full_census(oa, coloring)
    recount = census.R_strict if objective == "rainbow" else census.M
    if recount != best_val:
        raise RuntimeError(f"search tracked {best_val} but recount gives {recount}")
    return SearchResult(
        best_val, tuple(int(v) for v in best_assign), evals, "seeded-random", seed, n, r,
        time.perf_counter() - start,
        {"objective_kind": objective, "maximize": maximize, "restarts": restarts,
         "min_class_size": min_class_size, "achieved_zero": best_val == 0,
         "class_sizes": list(coloring.class_sizes)},
    )
