"""File formats: groups, arrays, colorings, censuses, reports and search results.

JSON is canonical.  Integers outside the 53-bit safe range are written as
decimal strings.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .census import PatternCensus
from .coloring import Coloring
from .errors import StructureError
from .ground import AbelianGroup, FiniteGroup, Quasigroup, validate_group, validate_latin
from .identities import IdentityReport
from .oa import OrthogonalArray

SAFE_INT = 2**53


def _safe(obj):
    if isinstance(obj, (bool, type(None), str, float)):
        return obj
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return str(v) if abs(v) >= SAFE_INT else v
    if isinstance(obj, dict):
        return {str(k): _safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_safe(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(_safe(obj), indent=2) + "\n"


def parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(obj: dict, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise StructureError(f"{what}: missing field {key!r}")
    return obj[key]


def _int_matrix(value, what: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise StructureError(f"{what}: expected a list of lists")
    try:
        return [[int(x) for x in row] for row in value]
    except (TypeError, ValueError):
        raise StructureError(f"{what}: entries must be integers") from None


# -- groups -----------------------------------------------------------------


def group_from_dict(obj: dict):
    kind = _field(obj, "kind", "group")
    if kind == "abelian":
        orders = _field(obj, "orders", "group")
        if not isinstance(orders, list):
            raise StructureError("group: 'orders' must be a list of integers")
        return AbelianGroup(tuple(int(o) for o in orders))
    if kind == "table":
        g = FiniteGroup.from_table(_int_matrix(_field(obj, "table", "group"), "group.table"))
        verdict = validate_group(g)
    elif kind == "quasigroup":
        g = Quasigroup(_int_matrix(_field(obj, "table", "group"), "group.table"))
        verdict = validate_latin(g)
    else:
        raise StructureError(f"group: unknown kind {kind!r}")
    if not verdict:
        raise StructureError(f"group: {verdict.reason}")
    return g


def group_to_dict(g) -> dict:
    if isinstance(g, AbelianGroup):
        return {"kind": "abelian", "orders": list(g.orders)}
    kind = "table" if isinstance(g, FiniteGroup) else "quasigroup"
    return {"kind": kind, "table": g.table.tolist()}


# -- orthogonal arrays --------------------------------------------------------


def oa_to_dict(oa: OrthogonalArray) -> dict:
    return {"d": oa.d, "k": oa.k, "n": oa.n, "rows": oa.rows.tolist(), "provenance": oa.provenance}


def oa_from_dict(obj: dict) -> OrthogonalArray:
    d, k, n = (int(_field(obj, key, "oa")) for key in ("d", "k", "n"))
    rows = _int_matrix(_field(obj, "rows", "oa"), "oa.rows")
    for i, row in enumerate(rows):
        if len(row) != d:
            raise StructureError(f"oa.rows[{i}]: expected {d} entries, got {len(row)}")
    return OrthogonalArray(d, k, n, np.array(rows, dtype=np.int64).reshape(-1, d), obj.get("provenance", ""))


def oa_to_text(oa: OrthogonalArray) -> str:
    lines = [f"{oa.d} {oa.k} {oa.n}"]
    lines += [" ".join(map(str, row)) for row in oa.rows.tolist()]
    return "\n".join(lines) + "\n"


def oa_from_text(text: str) -> OrthogonalArray:
    lines = [ln for ln in text.splitlines()]
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise StructureError("oa text: empty input")
    lineno, head = body[0]
    if len(head) != 3:
        raise StructureError(f"oa text line {lineno}: header must be 'd k n'")
    try:
        d, k, n = map(int, head)
        rows = []
        for lineno, parts in body[1:]:
            if len(parts) != d:
                raise StructureError(f"oa text line {lineno}: expected {d} entries, got {len(parts)}")
            rows.append([int(x) for x in parts])
    except ValueError:
        raise StructureError(f"oa text line {lineno}: entries must be integers") from None
    return OrthogonalArray(d, k, n, np.array(rows, dtype=np.int64).reshape(-1, d))


def load_oa(path) -> OrthogonalArray:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return oa_from_dict(parse_json(text, str(path)))
    return oa_from_text(text)


# -- colorings, censuses, reports -------------------------------------------------


def coloring_to_dict(c: Coloring) -> dict:
    return {"n": c.n, "r": c.r, "colors": c.assign.tolist()}


def coloring_from_dict(obj: dict) -> Coloring:
    n, r = int(_field(obj, "n", "coloring")), int(_field(obj, "r", "coloring"))
    colors = _field(obj, "colors", "coloring")
    if not isinstance(colors, list):
        raise StructureError("coloring: 'colors' must be a list")
    return Coloring(n, r, [int(x) for x in colors])


def load_coloring(path) -> Coloring:
    return coloring_from_dict(parse_json(Path(path).read_text(), str(path)))


def load_group(path):
    return group_from_dict(parse_json(Path(path).read_text(), str(path)))


def census_to_dict(census: PatternCensus) -> dict:
    return {
        "d": census.d,
        "k": census.k,
        "n": census.n,
        "r": census.r,
        "counts": [{"v": list(v), "s": s} for v, s in sorted(census.counts.items())],
        "M": census.M,
        "M_i": list(census.M_i),
        "S_i": list(census.S_i),
        "R_strict": census.R_strict,
        "R_covering": census.R_covering,
        "T21": census.T21,
    }


def report_to_dict(rep: IdentityReport) -> dict:
    out = {
        "identity": rep.identity,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "residual": rep.residual,
        "relation": rep.relation,
        "verdict": rep.verdict,
        "witness": rep.witness,
    }
    if not rep.hard:
        out["hard"] = False
    if rep.note:
        out["note"] = rep.note
    return out


CSV_FIELDS = ["n", "r", "mode", "min", "argmin", "seed", "elapsed-ms"]


def results_to_csv(results, timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for res in results:
        w.writerow([
            res.n, res.r, res.mode, res.objective,
            "".join(map(str, res.argmin)) if res.r <= 10 else " ".join(map(str, res.argmin)),
            "" if res.seed is None else res.seed,
            f"{res.elapsed * 1000:.3f}" if timing else "",
        ])
    return buf.getvalue()
