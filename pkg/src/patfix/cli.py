"""Command-line interface: tables, sequences, verification, class
partitions, generating functions and avoider dumps.

Exit codes: 0 success (and everything verified), 1 at least one audited
item is discrepant, 2 usage error, 3 resource cap exceeded.  Results go
to stdout, diagnostics to stderr.  JSON output renders every count as a
decimal string so exactness survives any consumer.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import audit as audit_mod
from . import generators
from .equivalence import divergence_witness, super_wilf_classes, symmetry_classes
from .formulas import (
    Undefined,
    evaluate,
    formula_for_patterns,
    formula_ids,
)
from .genfun import gf_for_k, poly_text, series_coefficients
from .oracle import CapExceeded, enumerate_avoiders, refined_count
from .perms import ALL_PATTERNS, PatternSet

EXIT_OK = 0
EXIT_DISCREPANT = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_METHODS_TABLE = ("oracle", "formula", "generator")
_METHODS_SEQUENCE = ("oracle", "formula", "generator", "gf")


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patfix",
        description=(
            "Exact refined enumeration of permutations avoiding length-3 "
            "patterns, counted by fixed points."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, patterns=True, cap=True, fmt="plain"):
        if patterns:
            p.add_argument("--patterns", required=True,
                           help='comma-separated patterns, e.g. "123,132"')
        if cap:
            p.add_argument("--cap", type=int, default=None,
                           help="override the enumeration cap")
        p.add_argument("--format", choices=("plain", "json", "csv"), default=fmt)

    p = sub.add_parser("table", help="refined counts for n = 0..n-max")
    add_common(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=_METHODS_TABLE, default="oracle")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("sequence", help="one column of the table as a sequence in n")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=_METHODS_SEQUENCE, default="oracle")
    p.set_defaults(func=_cmd_sequence)

    p = sub.add_parser("verify", help="audit closed forms against the oracle")
    add_common(p, patterns=False, fmt="json")
    p.add_argument("--all", action="store_true", help="audit every registered item")
    p.add_argument("--formula", help="audit one formula id, e.g. thm-231-312")
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classes", help="symmetry or empirical equivalence classes")
    add_common(p, patterns=False, fmt="json")
    p.add_argument("--size", type=int, required=True, help="pattern set cardinality, 1..6")
    p.add_argument("--mode", choices=("symmetry", "superwilf"), default="symmetry")
    p.add_argument("--n-max", type=int, default=None,
                   help="table depth for superwilf mode")
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("gf", help="generating function and series for {231,321}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=_cmd_gf)

    p = sub.add_parser("avoiders", help="dump the avoiders of a pattern set")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_avoiders)

    return parser


def _parse_patterns(text: str) -> PatternSet:
    try:
        return PatternSet.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad pattern set {text!r}: {exc}") from exc


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _cell_text(value) -> str | None:
    if value is Undefined.OUT_OF_DOMAIN:
        return None
    if value is Undefined.NON_INTEGRAL:
        return "non-integral"
    return str(value)


def _table_rows(ps: PatternSet, n_max: int, method: str, cap: int | None) -> list[list[str | None]]:
    rows: list[list[str | None]] = []
    if method == "formula":
        f = formula_for_patterns(ps)
        if f is None:
            raise UsageError(f"no closed form is registered for {{{ps.canonical()}}}")
        for n in range(n_max + 1):
            rows.append([_cell_text(evaluate(f.formula_id, n, k)) for k in range(n + 1)])
    elif method == "generator":
        if generators.family_for(ps) is None:
            raise UsageError(
                f"no structural generator for {{{ps.canonical()}}}; use --method oracle"
            )
        for n in range(n_max + 1):
            rows.append([str(v) for v in generators.generate_refined(ps, n, cap=cap)])
    else:
        for n in range(n_max + 1):
            rows.append([str(v) for v in refined_count(n, ps, cap=cap)])
    return rows


def _cmd_table(args) -> int:
    ps = _parse_patterns(args.patterns)
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    rows = _table_rows(ps, args.n_max, args.method, args.cap)
    if args.format == "json":
        _emit_json({
            "patterns": ps.canonical(),
            "method": args.method,
            "n_max": args.n_max,
            "rows": [{"n": n, "counts": row} for n, row in enumerate(rows)],
        })
    elif args.format == "csv":
        header = ["n"] + [f"k{k}" for k in range(args.n_max + 1)]
        print(",".join(header))
        for n, row in enumerate(rows):
            cells = [("" if v is None else v) for v in row]
            cells += [""] * (args.n_max - n)
            print(",".join([str(n)] + cells))
    else:
        for n, row in enumerate(rows):
            print(f"n={n}: " + ",".join("-" if v is None else v for v in row))
    return EXIT_OK


def _sequence_values(ps: PatternSet, k: int, n_max: int, method: str, cap: int | None) -> list[str | None]:
    if method == "gf":
        if ps != PatternSet.parse("231,321"):
            raise UsageError('the gf method only covers --patterns "231,321"')
        return [str(c) for c in series_coefficients(gf_for_k(k), n_max)]
    if method == "formula":
        f = formula_for_patterns(ps)
        if f is None:
            raise UsageError(f"no closed form is registered for {{{ps.canonical()}}}")
        return [_cell_text(evaluate(f.formula_id, n, k)) for n in range(n_max + 1)]
    if method == "generator":
        if generators.family_for(ps) is None:
            raise UsageError(
                f"no structural generator for {{{ps.canonical()}}}; use --method oracle"
            )
        out = []
        for n in range(n_max + 1):
            hist = generators.generate_refined(ps, n, cap=cap)
            out.append(str(hist[k]) if k <= n else "0")
        return out
    out = []
    for n in range(n_max + 1):
        row = refined_count(n, ps, cap=cap)
        out.append(str(row[k]) if k <= n else "0")
    return out


def _cmd_sequence(args) -> int:
    ps = _parse_patterns(args.patterns)
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    values = _sequence_values(ps, args.k, args.n_max, args.method, args.cap)
    if args.format == "json":
        _emit_json({
            "patterns": ps.canonical(),
            "k": args.k,
            "method": args.method,
            "n_max": args.n_max,
            "values": values,
        })
    elif args.format == "csv":
        print("n,value")
        for n, v in enumerate(values):
            print(f"{n},{'' if v is None else v}")
    else:
        print(",".join("-" if v is None else v for v in values))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.all == bool(args.formula):
        raise UsageError("choose exactly one of --all or --formula ID")
    if args.all:
        reports = audit_mod.audit_all(args.n_max, cap=args.cap)
    else:
        if args.formula not in formula_ids():
            raise UsageError(
                f"unknown formula id {args.formula!r}; known ids: "
                + ", ".join(formula_ids())
            )
        reports = [audit_mod.audit_formula(args.formula, args.n_max, cap=args.cap)]
    if args.format == "json":
        print(audit_mod.reports_to_json(reports))
    else:
        for r in reports:
            line = f"{r.status.upper():10s} {r.item_id} (cells={r.cells_checked}, skipped={r.cells_skipped})"
            if r.counterexample is not None:
                c = r.counterexample
                line += (
                    f"  counterexample n={c.n} k={c.k}: "
                    f"claimed {c.formula_value}, oracle {c.oracle_value}"
                )
            print(line)
    return EXIT_OK if all(r.verified for r in reports) else EXIT_DISCREPANT


def _cmd_classes(args) -> int:
    if not 1 <= args.size <= 6:
        raise UsageError("--size must be between 1 and 6")
    if args.mode == "symmetry":
        classes = symmetry_classes(args.size)
        payload = [[m.canonical() for m in c.members] for c in classes]
        if args.format == "json":
            _emit_json({"mode": "symmetry", "size": args.size, "classes": payload})
        else:
            for members in payload:
                print(" ; ".join(members))
        return EXIT_OK
    if args.n_max is None:
        raise UsageError("--mode superwilf requires --n-max")
    import itertools

    candidates = [PatternSet(c) for c in itertools.combinations(ALL_PATTERNS, args.size)]
    classes = super_wilf_classes(candidates, args.n_max, cap=args.cap)
    payload = [[m.canonical() for m in c.members] for c in classes]
    witnesses = []
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            w = divergence_witness(a.members[0], b.members[0], args.n_max, cap=args.cap)
            if w is not None:
                witnesses.append({
                    "a": a.members[0].canonical(),
                    "b": b.members[0].canonical(),
                    "n": w[0],
                    "k": w[1],
                })
    if args.format == "json":
        _emit_json({
            "mode": "superwilf",
            "size": args.size,
            "n_max": args.n_max,
            "empirical": True,
            "classes": payload,
            "witnesses": witnesses,
        })
    else:
        for members in payload:
            print(" ; ".join(members))
        for w in witnesses:
            print(f"split {w['a']} | {w['b']} at n={w['n']} k={w['k']}")
    return EXIT_OK


def _cmd_gf(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    if args.terms < 0:
        raise UsageError("--terms must be nonnegative")
    gf = gf_for_k(args.k)
    series = [str(c) for c in series_coefficients(gf, args.terms)]
    if args.format == "json":
        _emit_json({
            "k": args.k,
            "terms": args.terms,
            "numerator": poly_text(gf.numerator),
            "denominator": poly_text(gf.denominator),
            "series": series,
        })
    else:
        print(f"numerator: {poly_text(gf.numerator)}")
        print(f"denominator: {poly_text(gf.denominator)}")
        print("series: " + ",".join(series))
    return EXIT_OK


def _cmd_avoiders(args) -> int:
    ps = _parse_patterns(args.patterns)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    perms = [p.compact() for p in enumerate_avoiders(args.n, ps, cap=args.cap)]
    if args.format == "json":
        _emit_json({
            "patterns": ps.canonical(),
            "n": args.n,
            "count": str(len(perms)),
            "avoiders": perms,
        })
    elif args.format == "csv":
        print("permutation")
        for p in perms:
            print(p)
    else:
        for p in perms:
            print(p)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except generators.UnsupportedFamily as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
