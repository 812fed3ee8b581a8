"""Command-line front end: ``singmod {qexp,traces,classnum,verify,asymptotics}``.

Exit codes: 0 success, 1 identity failure, 2 usage error, 3 failed
precondition inside a computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .report import to_jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
PRECISION_ENV = "SINGMOD_PRECISION"
SEQUENCES = ("spt", "p")


class UsageError(Exception):
    pass


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 128
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer") from None
    return value


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _emit_rows(rows: list[tuple], header: tuple, fmt: str, out, meta: dict | None = None):
    if fmt == "json":
        payload = dict(meta or {})
        payload["rows"] = [dict(zip(header, (to_jsonable(v) for v in row))) for row in rows]
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        out.write(buf.getvalue())
    else:
        for row in rows:
            out.write(" ".join(_fmt(v) for v in row) + "\n")


# -- subcommands ------------------------------------------------------------------


def cmd_qexp(args, out) -> int:
    from .arith import partitions_upto, spt_upto
    from .forms import FORM_NAMES, build_form
    from .identities import build_f3

    name = args.form
    if name in SEQUENCES:
        # sequences list n = 1..order (spt) or n = 0..order (p)
        if args.order < 1:
            raise UsageError("order must be positive")
        if name == "spt":
            rows = [(n, v) for n, v in enumerate(spt_upto(args.order), start=1)]
        else:
            rows = list(enumerate(partitions_upto(args.order)))
        _emit_rows(rows, ("n", "value"), args.format, out, {"name": name})
        return EXIT_OK
    if name == "f3":
        series = build_f3(max(args.order, 6)).truncate(args.order)
    elif name in FORM_NAMES:
        if args.order < 2:
            raise UsageError("order must be at least 2")
        series = build_form(name, args.order)
    else:
        raise UsageError(f"unknown form {name!r}; choose from {', '.join(FORM_NAMES + SEQUENCES + ('f3',))}")
    if args.format == "json":
        payload = {"name": name, "series": series.to_json()}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_OK
    rows = [(Fraction(e, series.scale), c) for e, c in sorted(series.coeffs.items())]
    _emit_rows(rows, ("exponent", "coeff"), args.format, out)
    return EXIT_OK


def _build_trace_table(args):
    from . import traces
    from .identities import t1_table, t2_table

    level, m, dmax = args.level, args.m, args.dmax
    method = args.method
    if level == 1:
        if args.starred:
            raise UsageError("--starred only applies to level 2")
        if method in (None, "exact"):
            if m == 1:
                return t1_table(dmax)
            if m == 2:
                return t2_table(dmax)
            method = "numeric"
        if method == "bootstrap":
            if m != 1:
                raise UsageError("level-1 bootstrap is available for m = 1")
            return traces.t1_bootstrap(dmax)
        if method == "hecke":
            if m != 2:
                raise UsageError("the Hecke route gives m = 2")
            return traces.t2_via_hecke(traces.t1_closed_form(4 * dmax), dmax)
        if method == "closed-form":
            if m != 1:
                raise UsageError("the closed form gives m = 1")
            return traces.t1_closed_form(dmax)
    if level == 2 and method in (None, "exact", "bootstrap"):
        plain, starred = traces.t_level2_bootstrap(m, dmax)
        return starred if args.starred else plain
    if method == "numeric":
        admissible = (lambda d: d % 4 in (0, 3)) if level == 1 else (lambda d: d % 8 in (0, 4, 7))
        ds = [d for d in range(1, dmax + 1) if admissible(d)]
        return traces.numeric_table(level, m, ds, args.starred, args.precision)
    raise UsageError(f"method {method!r} is not available at level {level}")


def cmd_traces(args, out) -> int:
    if args.m < 1 or args.dmax < 0:
        raise UsageError("m must be positive and dmax non-negative")
    table = _build_trace_table(args)
    rows = [(d, v) for d, v in table.items() if d <= args.dmax]
    if args.format == "json":
        payload = table.to_json()
        payload["entries"] = {str(d): v for d, v in payload["entries"].items() if int(d) <= args.dmax}
        payload["dmax"] = args.dmax
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_OK
    if table.provenance == "numeric":
        import mpmath

        rows = [(d, mpmath.nstr(v, 25)) for d, v in rows]
    _emit_rows(rows, ("d", "value"), args.format, out)
    return EXIT_OK


def cmd_classnum(args, out) -> int:
    from .quadforms import enumerate_classes, enumerate_classes_fricke, enumerate_classes_gamma0, hurwitz_H, valid_residues

    d = args.d
    if d <= 0 or d % 4 not in (0, 3):
        raise UsageError(f"-{d} is not a negative discriminant")
    if args.group == "level1":
        classes = enumerate_classes(d)
    elif args.group == "fricke":
        classes = enumerate_classes_fricke(d, args.p)
    else:
        h = args.h
        if h is None:
            hs = valid_residues(d, args.p)
            h = hs[0] if hs else 0
        classes = enumerate_classes_gamma0(d, args.p, h)
    if args.format == "json":
        payload = classes.to_json()
        payload["weighted_count"] = to_jsonable(classes.weighted_count())
        if args.group == "level1":
            payload["hurwitz"] = to_jsonable(hurwitz_H(d))
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_OK
    rows = [(str(q), w) for q, w in classes]
    _emit_rows(rows, ("form", "stabiliser"), args.format, out)
    if args.format == "text":
        out.write(f"weighted count {_fmt(classes.weighted_count())}\n")
    return EXIT_OK


_RANGE_FLAGS = ("nmax", "dmax", "order", "mmax", "terms")


def _verify_kwargs(ident: str, args) -> dict:
    from .identities import REGISTRY

    fn, range_kw = REGISTRY[ident]
    kwargs = {}
    for flag in _RANGE_FLAGS:
        value = getattr(args, flag, None)
        if value is None:
            continue
        if flag != range_kw:
            raise UsageError(f"--{flag} does not apply to {ident}" + (f"; use --{range_kw}" if range_kw else ""))
        kwargs[flag] = value
    if args.nu is not None:
        if ident != "es-trace":
            raise UsageError("--nu only applies to es-trace")
        kwargs["numax"] = args.nu
    if args.form is not None:
        if ident != "bko":
            raise UsageError("--form only applies to bko")
        kwargs["fname"] = args.form
    if ident in ("numeric", "duality-d3"):
        kwargs["precision"] = args.precision
    if ident == "numeric" and args.level is not None:
        kwargs["level"] = args.level
    return kwargs


def _run_identity(ident: str, kwargs: dict) -> list:
    from .identities import REGISTRY

    fn, _ = REGISTRY[ident]
    if ident == "bko" and "fname" not in kwargs:
        return [fn(fname=f, **kwargs) for f in ("E4", "E6", "Delta")]
    return [fn(**kwargs)]


def _report_json(report, timing: bool) -> dict:
    data = report.to_json()
    if not timing:
        data.pop("runtime")
    return data


def cmd_verify(args, out) -> int:
    from .identities import REGISTRY

    if args.identity == "all":
        if any(getattr(args, f, None) is not None for f in _RANGE_FLAGS + ("nu", "form")):
            raise UsageError("range flags cannot be combined with 'verify all'")
        idents = sorted(REGISTRY)
        reports = []
        for ident in idents:
            kw = {"precision": args.precision} if ident in ("numeric", "duality-d3") else {}
            reports.extend(_run_identity(ident, kw))
    else:
        if args.identity not in REGISTRY:
            raise UsageError(f"unknown identity {args.identity!r}; choose from all, {', '.join(sorted(REGISTRY))}")
        reports = _run_identity(args.identity, _verify_kwargs(args.identity, args))
    passed = all(r.passed for r in reports)
    if args.format == "json":
        payload = {"passed": passed, "reports": [_report_json(r, args.timing) for r in reports]}
        if not args.full:
            for item, r in zip(payload["reports"], reports):
                item.pop("residuals")
                item["instances"] = len(r.residuals)
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.identity} {json.dumps(to_jsonable(r.params), sort_keys=True)} instances={len(r.residuals)}"
            if args.timing:
                line += f" time={r.runtime:.2f}s"
            if not r.passed:
                line += f" :: {r.note}"
            out.write(line + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_asymptotics(args, out) -> int:
    from .numeric import asymptotic_ratio_j, asymptotic_trace_ratio, laplace_check

    values = args.values
    rows = []
    if args.kind == "j":
        from .identities import j_coeffs

        values = values or [1, 10, 50, 100, 200]
        j = j_coeffs(max(values))
        rows = [(n, f"{asymptotic_ratio_j(n, j.coeff_at(n)):.6f}") for n in values]
    elif args.kind == "t2":
        from .identities import t2_table

        values = values or [100, 200, 300, 399, 400]
        t2 = t2_table(max(values))
        rows = [(d, f"{asymptotic_trace_ratio(d, t2(d)):.6f}") for d in values]
    else:
        values = values or [1, 10, 100, 1000]
        for lam in values:
            quad, closed = laplace_check(lam)
            rows.append((lam, f"{quad / closed:.6f}"))
    _emit_rows(rows, ("arg", "ratio"), args.format, out, {"kind": args.kind})
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="singmod", description="Traces of singular moduli and related identities.")
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")
    fmt.add_argument("--output", "-o", help="write to a file instead of stdout")
    fmt.add_argument("--precision", type=int, default=None, help=f"bits (default 128, or ${PRECISION_ENV})")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("qexp", parents=[fmt], help="q-expansion of a named form")
    p.add_argument("form")
    p.add_argument("--order", type=int, default=10, help="exponents below this (sequences: n up to this)")
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("traces", parents=[fmt], help="table of traces of singular moduli")
    p.add_argument("--level", type=int, choices=(1, 2), default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--dmax", type=int, default=400)
    p.add_argument("--starred", action="store_true", help="Fricke traces (level 2)")
    p.add_argument("--method", choices=("exact", "closed-form", "bootstrap", "hecke", "numeric"))
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("classnum", parents=[fmt], help="classes of binary quadratic forms")
    p.add_argument("d", type=int)
    p.add_argument("--group", choices=("level1", "gamma0", "fricke"), default="level1")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--h", type=int)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("verify", parents=[fmt], help="run an identity check (or 'all')")
    p.add_argument("identity")
    for flag in _RANGE_FLAGS:
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--nu", type=int, help="largest nu for es-trace")
    p.add_argument("--form", help="form for bko (E4, E6, Delta, E4^2)")
    p.add_argument("--level", type=int, choices=(1, 2), help="level for the numeric check")
    p.add_argument("--full", action="store_true", help="include per-instance residuals in JSON")
    p.add_argument("--timing", action="store_true", help="include runtimes (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotics", parents=[fmt], help="leading-order asymptotic ratios")
    p.add_argument("kind", choices=("j", "t2", "laplace"))
    p.add_argument("values", nargs="*", type=int)
    p.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.precision is None:
            args.precision = _default_precision()
        if args.precision < 64:
            raise UsageError("precision must be at least 64 bits")
        out = open(args.output, "w") if args.output else sys.stdout
        try:
            return args.func(args, out)
        finally:
            if args.output:
                out.close()
    except UsageError as exc:
        sys.stderr.write(f"singmod: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, LookupError, ArithmeticError, RuntimeError) as exc:
        sys.stderr.write(f"singmod: precondition failed: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
