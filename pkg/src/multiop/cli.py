"""Command-line interface.

    multiop coeffs  --family charlier --params a=1,2 --box 3,3 --method closed-form
    multiop poly    --family charlier --params a=1 --index 2
    multiop typei   --family charlier --params a=1,2 --index 1,1
    multiop verify  --family laguerre1 --params alpha=1/2,5/3 --box 4,4
    multiop kernel  --family hermite --params c=1,-1 --index 1,1 --grid -1:1:3,-1:1:3
    multiop moments --family jacobi-pineiro --params alpha=1/2,1/3 beta=1/3 --max-degree 6

Rationals are always printed as exact strings.  Exit codes: 0 success,
1 computation or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import core
from .errors import InvalidParameters, MopError, ParseError, UnsupportedFamily
from .exact import format_rational, parse_rational
from .families import closed_form_coefficients
from .lattice import LatticePath, MultiIndex, enumerate_box
from .moments import FAMILY_PARAMS, FamilySpec, build_moments, normalize_family, table_from_json
from .recurrence import cd_kernel_eval, default_path, field_from_json
from .verify import ALL_CHECKS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("entries must be non-negative")
    return vals


def parse_params(tokens) -> dict[str, tuple[Fraction, ...]]:
    """``["alpha=1/2,5/3", "beta=1/3"]`` -> {"alpha": (1/2, 5/3), "beta": (1/3,)}."""
    out = {}
    for tok in tokens or ():
        for part in tok.split():
            if "=" not in part:
                raise UsageError(f"parameter {part!r} is not of the form name=v1,v2,...")
            name, _, values = part.partition("=")
            try:
                out[name.strip()] = tuple(parse_rational(v) for v in values.split(","))
            except ValueError as exc:
                raise UsageError(f"parameter {name}: {exc}") from None
    return out


def _spec_from_args(args) -> FamilySpec:
    fam = normalize_family(args.family)
    params = parse_params(args.params)
    shape = FAMILY_PARAMS[fam]
    for name, kind in shape.items():
        if kind == "scalar" and name in params and len(params[name]) != 1:
            raise UsageError(f"{name} takes a single value")
    return FamilySpec(fam, params).validate()


def _load_custom(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "field" in data:
        return field_from_json(data, str(path))
    return table_from_json(data, str(path))


def _source(args, depth: int):
    """(spec or None, table or None, field or None) for the chosen moment source."""
    if args.custom:
        loaded = _load_custom(args.custom)
        if isinstance(loaded, core.MomentTable):
            return None, loaded, None
        return None, None, loaded
    spec = _spec_from_args(args)
    return spec, build_moments(spec, depth), None


def _need_table(table, what):
    if table is None:
        raise UsageError(f"{what} needs a moment table, not a coefficient field")
    return table


def _check_r(n: MultiIndex, r: int):
    if n.r != r:
        raise UsageError(f"index/box has {n.r} entries but the source has r = {r}")


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _float_str(q) -> str:
    return repr(float(q))


def cmd_coeffs(args) -> tuple[int, str]:
    limits = args.box
    spec, table, _ = _source(args, core.box_depth(limits, ring=1))
    table = _need_table(table, "coeffs")
    _check_r(MultiIndex(limits), table.r)
    method = args.method
    if method == "closed-form" and spec is None:
        raise UsageError("--method closed-form needs a built-in family")
    if method == "determinant" and table.r != 2:
        raise UsageError("--method determinant needs r = 2")
    sys_ = core.system_for(table)
    rows = []
    for n in enumerate_box(limits):
        if method == "oracle":
            c = sys_.coefficients(n)
        elif method == "closed-form":
            c = closed_form_coefficients(spec, n)
        else:
            c = sys_.determinant_coefficients(n).coefficients
        rows.append((n, c))
    r = table.r
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = [f"n{j}" for j in range(1, r + 1)] + [f"a{j}" for j in range(1, r + 1)] + [
            f"b{j}" for j in range(1, r + 1)]
        if args.float:
            head += [f"a{j}_float" for j in range(1, r + 1)] + [f"b{j}_float" for j in range(1, r + 1)]
        w.writerow(head)
        for n, c in rows:
            line = list(n.entries) + [format_rational(x) for x in c.a + c.b]
            if args.float:
                line += [_float_str(x) for x in c.a + c.b]
            w.writerow(line)
        return EXIT_OK, buf.getvalue()
    out = []
    for n, c in rows:
        row = {"index": n.to_json(), **c.to_json()}
        if args.float:
            row["a_float"] = [float(x) for x in c.a]
            row["b_float"] = [float(x) for x in c.b]
        out.append(row)
    return EXIT_OK, _dump_json(out)


def _poly_output(args, payload, floats):
    if args.float:
        payload = {"exact": payload, "float": floats}
    return EXIT_OK, _dump_json(payload)


def cmd_poly(args) -> tuple[int, str]:
    n = MultiIndex(args.index)
    spec, table, _ = _source(args, core.matrix_depth(n) + 1)
    table = _need_table(table, "poly")
    _check_r(n, table.r)
    p = core.type2_polynomial(table, n)
    return _poly_output(args, p.to_json(), [float(c) for c in p.coefficients])


def cmd_typei(args) -> tuple[int, str]:
    n = MultiIndex(args.index)
    spec, table, _ = _source(args, core.matrix_depth(n) + 1)
    table = _need_table(table, "typei")
    _check_r(n, table.r)
    v = core.type1_vector(table, n)
    return _poly_output(args, v.to_json(), [[float(c) for c in p] for p in v.polys])


def cmd_moments(args) -> tuple[int, str]:
    spec, table, _ = _source(args, args.max_degree)
    table = _need_table(table, "moments")
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["measure", "k", "moment"] + (["moment_float"] if args.float else []))
        for j, row in enumerate(table.moments, start=1):
            for k, v in enumerate(row):
                w.writerow([j, k, format_rational(v)] + ([_float_str(v)] if args.float else []))
        return EXIT_OK, buf.getvalue()
    return EXIT_OK, _dump_json(table.to_json())


def cmd_verify(args) -> tuple[int, str]:
    limits = args.box
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise UsageError(f"unknown checks {sorted(unknown)}; choose from {','.join(ALL_CHECKS)}")
    spec, table, field_ = _source(args, core.box_depth(limits))
    r = table.r if table is not None else field_.r
    _check_r(MultiIndex(limits), r)
    if field_ is not None:
        outer = [m + 1 for m in limits]
        missing = [n for n in enumerate_box(outer) if n not in field_]
        if missing:
            raise UsageError(f"coefficient field must cover the box {outer}; missing {missing[0]}")
    report = run_suite(limits, checks, spec=spec, table=table, field_=field_,
                       max_paths=args.max_paths, seed=args.seed)
    return (EXIT_OK if report.passed else EXIT_FAIL), report.dumps()


def _parse_grid(text: str):
    try:
        xs, ys = text.split(",")
        axes = []
        for part in (xs, ys):
            lo, hi, steps = part.split(":")
            lo, hi, steps = float(lo), float(hi), int(steps)
            if steps < 1:
                raise ValueError
            if steps == 1:
                axes.append([lo])
            else:
                axes.append([lo + (hi - lo) * i / (steps - 1) for i in range(steps)])
    except ValueError:
        raise UsageError(f"--grid must look like xmin:xmax:steps,ymin:ymax:steps, got {text!r}") from None
    return axes


def cmd_kernel(args) -> tuple[int, str]:
    n = MultiIndex(args.index)
    if args.custom:
        raise UsageError("kernel needs a built-in family (weights must be evaluable)")
    spec, table, _ = _source(args, core.coefficient_depth(n) + n.size() + 2)
    _check_r(n, table.r)
    if args.path:
        path = LatticePath(tuple(int(t) for t in args.path.split(",")), n.r)
        if path.end != n:
            raise UsageError(f"--path ends at {path.end}, not at {n}")
    else:
        path = default_path(n)
    xs, ys = _parse_grid(args.grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "value"])
    for x in xs:
        for y in ys:
            v = cd_kernel_eval(table, spec, n, path, x, y, form=args.form)
            w.writerow([f"{x:.17g}", f"{y:.17g}", f"{v:.17g}"])
    return EXIT_OK, buf.getvalue()


def _add_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="hermite, charlier, laguerre1, laguerre2 or jacobi-pineiro")
    src.add_argument("--custom", metavar="PATH", help="custom moment JSON (or coefficient field for verify)")
    p.add_argument("--params", nargs="+", default=[], metavar="NAME=V1,V2",
                   help="family parameters as exact rationals, e.g. alpha=1/2,5/3 beta=1/3")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--float", action="store_true", help="add float columns next to the exact values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiop",
        description="Exact multiple orthogonal polynomials and nearest-neighbour recurrences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="recurrence coefficients over a box")
    _add_source(p)
    p.add_argument("--box", type=_int_list, required=True)
    p.add_argument("--method", choices=("oracle", "closed-form", "determinant"), default="oracle")
    p.set_defaults(func=cmd_coeffs)

    for name, func, helptext in (("poly", cmd_poly, "monic type II polynomial"),
                                 ("typei", cmd_typei, "type I vector")):
        p = sub.add_parser(name, help=helptext)
        _add_source(p)
        p.add_argument("--index", type=_int_list, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the verification suite over a box")
    _add_source(p)
    p.add_argument("--box", type=_int_list, required=True)
    p.add_argument("--checks", default=",".join(ALL_CHECKS))
    p.add_argument("--max-paths", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernel", help="Christoffel-Darboux kernel on a grid (CSV)")
    _add_source(p)
    p.add_argument("--index", type=_int_list, required=True)
    p.add_argument("--grid", required=True, metavar="XMIN:XMAX:STEPS,YMIN:YMAX:STEPS")
    p.add_argument("--path", help="comma-separated 1-based step directions (default: 1s first)")
    p.add_argument("--form", choices=("sum", "closed"), default="sum")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("moments", help="dump a reduced moment table")
    _add_source(p)
    p.add_argument("--max-degree", type=int, default=10)
    p.set_defaults(func=cmd_moments)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_paths", 1) < 1:
        parser.error("--max-paths must be >= 1")
    try:
        code, text = args.func(args)
    except (UsageError, InvalidParameters, UnsupportedFamily) as exc:
        print(f"multiop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MopError as exc:
        print(f"multiop: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
