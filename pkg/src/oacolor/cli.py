"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 invalid input or precondition.
Every option is a flag; the default seed is 0.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import formats
from .census import full_census
from .coloring import equitable_coloring, rainbow_free_ap_coloring, random_coloring
from .errors import OAColorError
from .extremal import min_schur_all_2colorings, min_schur_equitable, search_rainbow_free
from .ground import cyclic_group
from .identities import check_all
from .oa import (
    SwapSpec,
    ap3_triples,
    build_z3_extension,
    from_linear_equation,
    from_linear_system,
    schur_triples,
    swap_block,
    verify_strength,
)
from .worked_examples import worked_checks

DEFAULT_SEED = 0


class InputError(OAColorError):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text: str) -> list[list[int]]:
    return [_ints(row) for row in text.split(";")]


def _group(args):
    if args.group and args.cyclic:
        raise InputError("give either --group or --cyclic, not both")
    if args.group:
        return formats.load_group(args.group)
    if args.cyclic:
        return cyclic_group(args.cyclic)
    raise InputError("a ground structure is required (--group or --cyclic)")


def _swap(text: str, m: int) -> SwapSpec:
    parts = text.split("/")
    if len(parts) != 3:
        raise InputError(f"--swap expects U/V/PAIR, got {text!r}")

    def subset(s):
        return set(range(m)) if s.strip() == "*" else set(_ints(s))

    pair = tuple(int(ch) for ch in parts[2].strip())
    return SwapSpec(subset(parts[0]), subset(parts[1]), pair)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------


def cmd_oa_build(args) -> int:
    src = args.source
    if src == "equation":
        if args.coeffs is None:
            raise InputError("--coeffs is required for an equation source")
        G = _group(args)
        oa = from_linear_equation(G, _ints(args.coeffs), args.t)
    elif src == "system":
        if args.matrix is None:
            raise InputError("--matrix is required for a system source")
        G = _group(args)
        A = _matrix(args.matrix)
        rhs = _ints(args.rhs) if args.rhs else [0] * len(A)
        oa = from_linear_system(G, A, rhs)
    elif src == "schur":
        oa = schur_triples(_group(args))
    elif src == "ap3":
        oa = ap3_triples(_group(args))
    else:  # z3-extension
        Y = _group(args)
        L = build_z3_extension(Y)
        for spec in args.swap or []:
            L = swap_block(L, _swap(spec, L.n // 3))
        oa = schur_triples(L)
        desc = " then ".join(args.swap or []) or "no swaps"
        oa = dataclasses.replace(oa, provenance=f"z3-extension of order {L.n} ({desc})")
    text = formats.oa_to_text(oa) if args.format == "text" else formats.dumps(formats.oa_to_dict(oa))
    _emit(args, text)
    return 0


def cmd_oa_verify(args) -> int:
    oa = formats.load_oa(args.oa)
    verdict = verify_strength(oa)
    _emit(args, formats.dumps({"d": oa.d, "k": oa.k, "n": oa.n, "rows": len(oa), **verdict.to_dict()}))
    return 0 if verdict else 1


def cmd_census(args) -> int:
    oa = formats.load_oa(args.oa)
    c = formats.load_coloring(args.coloring)
    census = full_census(oa, c, workers=args.workers)
    _emit(args, formats.dumps(formats.census_to_dict(census)))
    return 0


def cmd_identities(args) -> int:
    oa = formats.load_oa(args.oa)
    c = formats.load_coloring(args.coloring)
    census = full_census(oa, c, workers=args.workers)
    reports = check_all(census, c)
    failed = [r for r in reports if r.hard and not r.passed]
    out = {
        "d": oa.d, "k": oa.k, "n": oa.n, "r": c.r,
        "passed": not failed,
        "reports": [formats.report_to_dict(r) for r in reports],
    }
    if failed:
        out["first_failure"] = formats.report_to_dict(failed[0])
    _emit(args, formats.dumps(out))
    return 1 if failed else 0


def cmd_coloring_build(args) -> int:
    if args.kind == "equitable":
        c = equitable_coloring(args.n, args.r, args.mode)
    elif args.kind == "interval":
        c = rainbow_free_ap_coloring(args.n, args.t)
    else:
        if args.sizes is None:
            raise InputError("--sizes is required for a random coloring")
        c = random_coloring(args.n, _ints(args.sizes), args.seed)
    _emit(args, formats.dumps(formats.coloring_to_dict(c)))
    return 0


def _emit_result(args, res) -> None:
    if args.format == "csv":
        _emit(args, formats.results_to_csv([res], timing=args.timing))
    else:
        _emit(args, formats.dumps(res.to_dict(timing=args.timing)))


def cmd_schur_min(args) -> int:
    if args.equitable:
        res = min_schur_equitable(args.n, args.r, samples=args.samples, seed=args.seed)
    else:
        if args.r != 2:
            raise InputError("the full sweep covers 2-colorings; use --equitable for other r")
        res = min_schur_all_2colorings(args.n, workers=args.workers)
    _emit_result(args, res)
    return 0


def cmd_search(args) -> int:
    oa = formats.load_oa(args.oa)
    res = search_rainbow_free(oa, args.r, budget=args.budget, seed=args.seed,
                              objective=args.objective, maximize=args.maximize,
                              min_class_size=args.min_class_size)
    _emit_result(args, res)
    return 0


def cmd_examples(args) -> int:
    checks = worked_checks()
    if args.format == "json":
        text = formats.dumps([
            {"name": c.name, "expected": repr(c.expected), "got": repr(c.got), "ok": c.ok} for c in checks
        ])
    else:
        text = "".join(
            f"{'PASS' if c.ok else 'FAIL'}  {c.name}: expected {c.expected!r}, got {c.got!r}\n" for c in checks
        )
    _emit(args, text)
    return 0 if all(c.ok for c in checks) else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="write output here instead of stdout")

    ground = argparse.ArgumentParser(add_help=False)
    ground.add_argument("--group", help="group/quasigroup JSON file")
    ground.add_argument("--cyclic", type=int, help="shortcut for the cyclic group Z_N")

    p = argparse.ArgumentParser(prog="oacolor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    oa = sub.add_parser("oa", help="build or verify orthogonal arrays").add_subparsers(dest="action", required=True)
    b = oa.add_parser("build", parents=[common, ground])
    b.add_argument("--source", required=True, choices=["equation", "system", "schur", "ap3", "z3-extension"])
    b.add_argument("--coeffs", help="equation coefficients, e.g. 1,1,-1")
    b.add_argument("--t", type=int, default=0, help="equation right-hand side (element index)")
    b.add_argument("--matrix", help="system matrix rows separated by ';', e.g. '1,1,1,1;1,2,3,4'")
    b.add_argument("--rhs", help="system right-hand side, e.g. 0,0")
    b.add_argument("--swap", action="append", help="U/V/PAIR layer swap, e.g. '*/*/01'; repeatable")
    b.add_argument("--format", choices=["json", "text"], default="json")
    b.set_defaults(func=cmd_oa_build)
    v = oa.add_parser("verify", parents=[common])
    v.add_argument("--oa", required=True)
    v.set_defaults(func=cmd_oa_verify)

    c = sub.add_parser("census", parents=[common])
    c.add_argument("--oa", required=True)
    c.add_argument("--coloring", required=True)
    c.set_defaults(func=cmd_census)

    ident = sub.add_parser("identities").add_subparsers(dest="action", required=True)
    chk = ident.add_parser("check", parents=[common])
    chk.add_argument("--oa", required=True)
    chk.add_argument("--coloring", required=True)
    chk.set_defaults(func=cmd_identities)

    col = sub.add_parser("coloring").add_subparsers(dest="action", required=True)
    cb = col.add_parser("build", parents=[common])
    cb.add_argument("--kind", choices=["equitable", "interval", "random"], default="equitable")
    cb.add_argument("--n", type=int, required=True)
    cb.add_argument("--r", type=int, default=2)
    cb.add_argument("--t", type=int, default=1)
    cb.add_argument("--mode", choices=["blocks", "round-robin"], default="blocks")
    cb.add_argument("--sizes", help="class sizes for a random coloring, e.g. 20,20,19")
    cb.set_defaults(func=cmd_coloring_build)

    ext = sub.add_parser("extremal").add_subparsers(dest="action", required=True)
    sm = ext.add_parser("schur-min", parents=[common])
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--r", type=int, default=2)
    sm.add_argument("--equitable", action="store_true", help="minimize over equitable colorings only")
    sm.add_argument("--samples", type=int, default=100_000)
    sm.add_argument("--format", choices=["json", "csv"], default="json")
    sm.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sm.set_defaults(func=cmd_schur_min)
    sr = ext.add_parser("search-rainbow-free", parents=[common])
    sr.add_argument("--oa", required=True)
    sr.add_argument("--r", type=int, default=3)
    sr.add_argument("--budget", type=int, default=20_000)
    sr.add_argument("--objective", choices=["rainbow", "monochromatic"], default="rainbow")
    sr.add_argument("--maximize", action="store_true")
    sr.add_argument("--min-class-size", type=int, default=1)
    sr.add_argument("--format", choices=["json", "csv"], default="json")
    sr.add_argument("--timing", action="store_true")
    sr.set_defaults(func=cmd_search)

    ex = sub.add_parser("examples").add_subparsers(dest="action", required=True)
    pe = ex.add_parser("paper", parents=[common], help="regenerate every worked example")
    pe.add_argument("--format", choices=["text", "json"], default="text")
    pe.set_defaults(func=cmd_examples)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (OAColorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
