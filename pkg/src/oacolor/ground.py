"""Finite algebraic structures behind the orthogonal-array constructions.

Every element is a dense index in ``[0, n)``.  Abelian groups use a
mixed-radix encoding of their invariant-factor tuple (first component most
significant); general groups and quasigroups are given by Cayley tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from .errors import NonInvertibleError, PreconditionError, StructureError

MAX_ORDER = 2**16
EXHAUSTIVE_ASSOC_MAX = 256
ASSOC_SAMPLES = 10**6
ASSOC_SEED = 0


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validity scan.  Truthy iff the scan passed."""

    ok: bool
    reason: str = ""
    witness: tuple | None = None
    mode: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "reason": self.reason,
            "witness": None if self.witness is None else list(self.witness),
            "mode": self.mode,
        }


def _check_order(n: int) -> None:
    if n < 1:
        raise StructureError(f"order must be positive, got {n}")
    if n > MAX_ORDER:
        raise PreconditionError(f"order {n} exceeds the cap {MAX_ORDER}")


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_s} with elements encoded as mixed-radix indices."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(o) for o in self.orders) or (1,)
        if any(o < 1 for o in orders):
            raise StructureError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)
        _check_order(math.prod(orders))

    @property
    def n(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @property
    def is_cyclic(self) -> bool:
        # Z_a x Z_b is cyclic iff the orders are pairwise coprime
        return self.exponent == self.n

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for o in reversed(self.orders):
            out.append(acc)
            acc *= o
        return tuple(reversed(out))

    def decode(self, index: int) -> tuple[int, ...]:
        return tuple((index // s) % o for s, o in zip(self.strides, self.orders))

    def encode(self, parts: Sequence[int]) -> int:
        return sum((p % o) * s for p, o, s in zip(parts, self.orders, self.strides))

    def decode_array(self, idx: np.ndarray) -> np.ndarray:
        """Component array of shape ``idx.shape + (s,)``."""
        idx = np.asarray(idx, dtype=np.int64)
        return np.stack([(idx // s) % o for s, o in zip(self.strides, self.orders)], axis=-1)

    def encode_array(self, parts: np.ndarray) -> np.ndarray:
        parts = np.asarray(parts, dtype=np.int64)
        out = np.zeros(parts.shape[:-1], dtype=np.int64)
        for t, (o, s) in enumerate(zip(self.orders, self.strides)):
            out += (parts[..., t] % o) * s
        return out

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a: int) -> int:
        return self.encode([-x for x in self.decode(a)])

    def scale(self, m: int, a: int) -> int:
        return self.encode([m * x for x in self.decode(a)])

    @cached_property
    def table(self) -> np.ndarray:
        idx = np.arange(self.n)
        comp = self.decode_array(idx)
        return self.encode_array(comp[:, None, :] + comp[None, :, :])

    def to_group(self) -> "FiniteGroup":
        return FiniteGroup(self.table, 0)


def cyclic_group(n: int) -> AbelianGroup:
    return AbelianGroup((n,))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table."""

    table: np.ndarray
    identity: int = 0

    def __post_init__(self):
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))

    @classmethod
    def from_table(cls, table) -> "FiniteGroup":
        """Build from a table, locating the two-sided identity if there is one."""
        t = np.asarray(table, dtype=np.int64)
        _check_square(t)
        ar = np.arange(t.shape[0])
        for e in range(t.shape[0]):
            if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
                return cls(t, e)
        return cls(t, 0)

    @property
    def n(self) -> int:
        return int(self.table.shape[0])

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(np.flatnonzero(self.table[a] == self.identity)[0])

    def power(self, a: int, m: int) -> int:
        x = self.identity
        for _ in range(m):
            x = self.op(x, a)
        return x


@dataclass(frozen=True, eq=False)
class Quasigroup:
    """A Latin square read as a binary operation."""

    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.table.shape[0])

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])


def dihedral_group(m: int) -> FiniteGroup:
    """Dihedral group of order 2m; element r^i s^j has index i + m*j."""
    if m < 1:
        raise PreconditionError("dihedral group needs m >= 1")
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        a, b = x % m, x // m
        for y in range(n):
            c, d = y % m, y // m
            rot = (a + (c if b == 0 else -c)) % m
            table[x, y] = rot + m * ((b + d) % 2)
    return FiniteGroup(table, 0)


def as_table(structure) -> np.ndarray:
    """Cayley table of any supported structure."""
    if isinstance(structure, AbelianGroup):
        return structure.table
    if isinstance(structure, (FiniteGroup, Quasigroup)):
        return structure.table
    raise StructureError(f"not an algebraic structure: {type(structure).__name__}")


def _check_square(t: np.ndarray) -> None:
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise StructureError(f"table must be a non-empty n x n array, got shape {t.shape}")
    n = t.shape[0]
    _check_order(n)
    if t.min() < 0 or t.max() >= n:
        raise StructureError(f"table entries must lie in [0, {n})")


def _latin_scan(t: np.ndarray) -> Verdict:
    n = t.shape[0]
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), target):
            return Verdict(False, f"row {i} is not a permutation", (i,))
    for j in range(n):
        if not np.array_equal(np.sort(t[:, j]), target):
            return Verdict(False, f"column {j} is not a permutation", (j,))
    return Verdict(True)


def validate_latin(candidate) -> Verdict:
    """Check that every row and column of the table is a permutation."""
    t = np.asarray(candidate.table if hasattr(candidate, "table") else candidate, dtype=np.int64)
    _check_square(t)
    return _latin_scan(t)


def validate_group(candidate) -> Verdict:
    """Check the Latin property, the identity and associativity.

    Associativity is exhaustive up to order 256 and sampled (seeded)
    above; ``Verdict.mode`` records which scan ran.
    """
    t = candidate.table if hasattr(candidate, "table") else np.asarray(candidate)
    t = np.asarray(t, dtype=np.int64)
    _check_square(t)
    n = t.shape[0]
    latin = _latin_scan(t)
    if not latin:
        return Verdict(False, "latin: " + latin.reason, latin.witness)
    e = getattr(candidate, "identity", 0)
    ar = np.arange(n)
    if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
        return Verdict(False, f"element {e} is not a two-sided identity", (e,))
    if n <= EXHAUSTIVE_ASSOC_MAX:
        mode = "exhaustive"
        for a in range(n):
            left = t[t[a]]  # (a*b)*c indexed [b, c]
            right = t[a][t]  # a*(b*c)
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = (int(v) for v in bad[0])
                return Verdict(False, "associativity fails", (a, b, c), mode)
    else:
        mode = f"sampled({ASSOC_SAMPLES}, seed={ASSOC_SEED})"
        rng = np.random.default_rng(ASSOC_SEED)
        a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
        bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if len(bad):
            i = bad[0]
            return Verdict(False, "associativity fails", (int(a[i]), int(b[i]), int(c[i])), mode)
    return Verdict(True, mode=mode)


def is_closed(table: np.ndarray, subset) -> bool:
    """A non-empty finite subset closed under the operation (a subgroup, for groups)."""
    s = np.array(sorted(set(subset)), dtype=np.int64)
    if len(s) == 0:
        return False
    prods = np.asarray(table)[np.ix_(s, s)]
    return bool(np.isin(prods, s).all())


def smallest_prime_divisor(n: int) -> int | None:
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


# -- modular linear algebra -------------------------------------------------


@dataclass(frozen=True)
class ModMatrix:
    """An m x d integer matrix with entries reduced modulo ``q``."""

    entries: tuple[tuple[int, ...], ...]
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise StructureError("modulus must be positive")
        rows = tuple(tuple(int(x) % self.q for x in row) for row in self.entries)
        if not rows or len({len(r) for r in rows}) != 1:
            raise StructureError("matrix rows must be non-empty and of equal length")
        if len(rows) > len(rows[0]):
            raise StructureError("need m <= d")
        object.__setattr__(self, "entries", rows)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return len(self.entries[0])

    def columns(self, cols: Sequence[int]) -> list[list[int]]:
        return [[row[j] for j in cols] for row in self.entries]


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, m) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        qt, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def invert_mod(sub: Sequence[Sequence[int]], q: int) -> list[list[int]]:
    """Inverse of a square integer matrix modulo q.

    Pivots are produced with unimodular extended-gcd row combinations, so
    composite moduli work even when no column entry is a unit.
    """
    m = len(sub)
    det = det_int([[x % q for x in row] for row in sub])
    g = math.gcd(det, q)
    if g != 1:
        raise NonInvertibleError(f"determinant {det} shares factor {g} with modulus {q}", g)
    if q == 1:
        return [[0] * m for _ in range(m)]
    aug = [[x % q for x in row] + [int(i == j) for j in range(m)] for i, row in enumerate(sub)]
    for col in range(m):
        for i in range(col + 1, m):
            a, b = aug[col][col], aug[i][col]
            if b == 0:
                continue
            g, s, t = _egcd(a, b)
            ag, bg = a // g, b // g
            top = [(s * x + t * y) % q for x, y in zip(aug[col], aug[i])]
            bot = [(-bg * x + ag * y) % q for x, y in zip(aug[col], aug[i])]
            aug[col], aug[i] = top, bot
        inv = pow(aug[col][col], -1, q)
        aug[col] = [(x * inv) % q for x in aug[col]]
        for i in range(m):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[col])]
    return [row[m:] for row in aug]


def invert_submatrix_mod(A: ModMatrix | Sequence[Sequence[int]], cols: Sequence[int], q: int) -> list[list[int]]:
    """Inverse modulo q of the square submatrix of A on the given columns."""
    rows = A.entries if isinstance(A, ModMatrix) else [list(r) for r in A]
    m = len(rows)
    if len(cols) != m:
        raise StructureError(f"need exactly {m} columns, got {len(cols)}")
    return invert_mod([[row[j] for j in cols] for row in rows], q)


def matmul_mod(a, b, q: int) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(row, col)) % q for col in zip(*b)] for row in a]
