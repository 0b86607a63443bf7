"""Regenerate the published worked values and compare them exactly."""
from __future__ import annotations

from dataclasses import dataclass

from .census import embed_interval_coloring, full_census
from .coloring import (
    equitable_coloring,
    from_classes,
    layer_coloring,
    rainbow_free_ap_coloring,
    subgroup_chain_coloring,
)
from .extremal import search_rainbow_free
from .ground import cyclic_group, dihedral_group
from .identities import check_2m_r, check_alpha_bounds, is_regular_equation, verify_counting_identity
from .oa import (
    SwapSpec,
    build_z3_extension,
    from_linear_equation,
    schur_triples,
    swap_block,
    verify_strength,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def _mono_rainbow(L):
    oa = schur_triples(L)
    census = full_census(oa, layer_coloring(oa.n))
    return census.M, census.R_strict, bool(verify_strength(oa))


def _example1(m: int) -> list[Check]:
    Y = cyclic_group(m)
    L = build_z3_extension(Y)
    out = [Check(f"z3-extension Y=Z{m}: (M, R, strength)", (3 * m * m, 6 * m * m, True), _mono_rainbow(L))]
    full = set(range(m))
    for U, V in ((set(), set()), ({0}, full), (set(range(m // 2 + 1)), {0, m - 1}), (full, full)):
        got = _mono_rainbow(swap_block(L, SwapSpec(U, V, (0, 1))))[0]
        out.append(Check(f"stage-1 swap Y=Z{m} |U|={len(U)} |V|={len(V)}: M", 3 * m * m - 2 * len(U) * len(V), got))
    L1 = swap_block(L, SwapSpec(full, full, (0, 1)))
    for U, V in (({0}, {1 % m}), (full, {0}), (full, full)):
        got = _mono_rainbow(swap_block(L1, SwapSpec(U, V, (0, 2))))[0]
        out.append(Check(f"stage-2 swap Y=Z{m} |U'|={len(U)} |V'|={len(V)}: M", m * m - len(U) * len(V), got))
    L2 = swap_block(L1, SwapSpec(full, full, (0, 2)))
    out.append(Check(f"both full swaps Y=Z{m}: (M, R, strength)", (0, 0, True), _mono_rainbow(L2)))
    return out


def worked_checks() -> list[Check]:
    out = []
    out += _example1(4)
    out += _example1(2)

    oa6 = from_linear_equation(cyclic_group(6), [1, 1, 1], 5)
    out.append(Check("x+y+z=-1 over Z6: rows, strength", (36, True), (len(oa6), bool(verify_strength(oa6)))))
    for n, t in ((6, 1), (12, 2), (12, 1), (12, 4)):
        c = rainbow_free_ap_coloring(n, t)
        census = full_census(from_linear_equation(cyclic_group(n), [1, 1, 1], n - 1), c)
        out.append(Check(f"interval coloring n={n} t={t} on x+y+z=-1: M", 0, census.M))
    out.append(Check("interval classes n=6 t=1", [[0, 1], [2, 3], [4, 5]], rainbow_free_ap_coloring(6, 1).classes()))
    out.append(Check("interval class sizes n=12 t=2", (2,) * 6, rainbow_free_ap_coloring(12, 2).class_sizes))
    c12 = rainbow_free_ap_coloring(12, 2)
    census12 = full_census(from_linear_equation(cyclic_group(12), [1, 1, 1], 11), c12)
    out.append(Check("interval coloring n=12 t=2: R = |alpha| n^2", 72, census12.R_strict))

    for label, G, K, H in (
        ("Z8", cyclic_group(8), [0, 4], [0, 2, 4, 6]),
        ("D8", dihedral_group(4), [0, 2], [0, 1, 2, 3]),
    ):
        c = subgroup_chain_coloring(G, K, H)
        census = full_census(schur_triples(G), c)
        out.append(Check(f"subgroup chain {label}: sizes, rainbow Schur", ((2, 2, 4), 0), (c.class_sizes, census.R_strict)))

    z5 = schur_triples(cyclic_group(5))
    c5 = from_classes(5, [[0, 1, 2], [3, 4]])
    reps = {tuple(r.witness): r for r in verify_counting_identity(full_census(z5, c5), c5)}
    out.append(Check("counting identity Z5 u=(2,0): both sides", (27, 27), (reps[(2, 0)].lhs, reps[(2, 0)].rhs)))

    z8 = schur_triples(cyclic_group(8))
    c4 = equitable_coloring(8, 4)
    bound = [r for r in check_alpha_bounds(full_census(z8, c4), c4) if r.identity.startswith("equitable")][0]
    out.append(Check("equitable 4-coloring Z8: (1-3/r) n^2 bound holds", (16, True), (bound.rhs, bound.passed)))
    c1 = equitable_coloring(8, 1)
    rep = check_2m_r(full_census(z8, c1), c1)[0]
    out.append(Check("one color Z8: 2M - R = 2 n^2", (128, 128), (rep.lhs, rep.rhs)))

    out.append(Check("x-2y+z regular", (True, (0, 1, 2)), is_regular_equation([1, -2, 1])))
    out.append(Check("x+y-z regular", (True, (0, 2)), is_regular_equation([1, 1, -1])))

    emb = embed_interval_coloring(from_classes(3, [[0], [1], [2]]))
    out.append(Check("embedding n=3: classes of Z6", [[1], [2], [3], [0, 4, 5]], emb.classes()))

    res = search_rainbow_free(oa6, 3, objective="monochromatic", seed=0)
    out.append(Check("search on x+y+z=-1 over Z6 reaches M=0", 0, res.objective))
    return out
