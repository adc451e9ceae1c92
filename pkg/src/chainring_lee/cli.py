"""Command-line front end.

    chainring-lee tob --m 2
    chainring-lee construct --spec '{"sigma":2,"m":1,"type":3,"params":{"ell":2,"t":0},"units":{"z":["0x1"]}}'
    chainring-lee validate --spec @spec.json
    chainring-lee distance --spec @spec.json --mode both
    chainring-lee sweep --sigma 2 --m 1 --type 1,2,3 --out csv --output rows.csv
    chainring-lee span-dump --spec @spec.json

Exit status: 0 on success, 1 when a MISMATCH verdict or constraint
violation is reported, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codespec import CodeSpec, ConstraintViolation, enumerate_specs, generators, smallest_params_formula, validate
from .formulas import hamming_distance, lee_bounds_sandwich, lee_distance
from .gf2m import MAX_M, field, find_tob, gram_matrix
from .oracle import MAX_BITS, CapacityError, build_span, oracle_report, span_dumps
from .polyring import format_poly, poly_to_json
from .sweep import MISMATCH, rows_to_csv, rows_to_json, run_sweep, summarize, verdict_for


class SpecParseError(ValueError):
    pass


def _load_spec(text: str) -> CodeSpec:
    try:
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        elif text == "-":
            text = sys.stdin.read()
        return CodeSpec.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"spec is not valid JSON: {exc}") from None
    except (OSError, ValueError, TypeError, AttributeError) as exc:
        raise SpecParseError(f"bad spec: {exc}") from None


def _field_degree(text: str) -> int:
    v = int(text)
    if not 1 <= v <= MAX_M:
        raise argparse.ArgumentTypeError(f"m must be in [1, {MAX_M}]")
    return v


def _types(text: str) -> list[int]:
    try:
        out = sorted({int(t) for t in text.split(",") if t})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad type list {text!r}") from None
    if not out or any(not 1 <= t <= 8 for t in out):
        raise argparse.ArgumentTypeError("types must be in 1..8")
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1))


def cmd_tob(args) -> int:
    ctx = field(args.m)
    basis = find_tob(ctx)
    print(f"modulus {ctx.modulus_str()}")
    print(f"tob {basis}")
    for row in gram_matrix(basis.elems, ctx):
        print(" ".join(str(v) for v in row))
    return 0


def _check_or_report(spec: CodeSpec) -> bool:
    violations = validate(spec)
    for v in violations:
        print(f"violation: {v}", file=sys.stderr)
    return not violations


def cmd_construct(args) -> int:
    spec = _load_spec(args.spec)
    if not _check_or_report(spec):
        return 1
    gens = generators(spec)
    _emit({
        "spec": spec.to_json(),
        "derived": smallest_params_formula(spec).as_dict(),
        "generators": [format_poly(g) for g in gens],
        "generators_json": [poly_to_json(g) for g in gens],
    })
    return 0


def cmd_validate(args) -> int:
    spec = _load_spec(args.spec)
    violations = validate(spec)
    _emit({"ok": not violations, "violations": [str(v) for v in violations]})
    return 1 if violations else 0


def cmd_distance(args) -> int:
    spec = _load_spec(args.spec)
    if not _check_or_report(spec):
        return 1
    out: dict = {"spec": spec.to_json()}
    formula = lee_distance(spec)
    if args.mode in ("formula", "both"):
        out["lee"] = formula.to_json()
        out["hamming"] = hamming_distance(spec).to_json()
        out["envelope"] = lee_bounds_sandwich(spec).to_json()
    rc = 0
    if args.mode in ("oracle", "both"):
        try:
            report = oracle_report(spec)
        except CapacityError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        out["oracle"] = report.to_json()
        if args.mode == "both":
            verdict = verdict_for(formula, report.d_lee)
            out["verdict"] = verdict
            rc = 1 if verdict == MISMATCH else 0
    _emit(out)
    return rc


def cmd_sweep(args) -> int:
    specs = list(enumerate_specs(args.sigma, args.m, args.type, budget=args.budget, seed=args.seed))
    rows = run_sweep(specs, workers=args.workers, audit_params=not args.skip_param_audit)
    timing = not args.no_timing
    text = rows_to_csv(rows, timing) if args.out == "csv" else rows_to_json(rows, timing)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    summary = summarize(rows)
    print(json.dumps(summary, indent=1), file=sys.stderr)
    return 1 if summary["verdicts"].get(MISMATCH) else 0


def cmd_span_dump(args) -> int:
    spec = _load_spec(args.spec)
    if not _check_or_report(spec):
        return 1
    try:
        print(span_dumps(build_span(spec, max_k=MAX_BITS)))
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainring-lee", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tob", help="print the trace-orthogonal basis and its Gram matrix")
    p.add_argument("--m", type=_field_degree, required=True)
    p.set_defaults(func=cmd_tob)

    spec_help = "spec as JSON text, @file, or - for stdin"
    for name, func, help_text in (("construct", cmd_construct, "print generators and derived params"),
                                  ("validate", cmd_validate, "check a spec's constraints"),
                                  ("span-dump", cmd_span_dump, "print the binary span of a code")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", required=True, help=spec_help)
        p.set_defaults(func=func)

    p = sub.add_parser("distance", help="closed-form and/or oracle distance of one code")
    p.add_argument("--spec", required=True, help=spec_help)
    p.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("sweep", help="cross-check every enumerated spec")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--m", type=_field_degree, default=1)
    p.add_argument("--type", type=_types, default=None, help="comma-separated families, default all")
    p.add_argument("--budget", type=int, default=64, help="max unit-polynomial combinations per exponent tuple")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled unit polynomials")
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write rows here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="write ms as 0 for byte-reproducible output")
    p.add_argument("--skip-param-audit", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstraintViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
