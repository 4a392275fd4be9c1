"""Command line front end: ``elcauchy {verify,reconstruct,sweep}``.

Exit status: 0 all checks passed, 1 some check failed, 2 parameters not
elliptic, 3 evaluation point outside the domain, 64 malformed arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

from .algebra import ElComplex, make_params
from .calculus import SmoothNonHolo, function_from_json
from .errors import EllipticityViolation, PoleOutsideDomain
from .quadrature import AlgEllipseDisk, Disk, QuadratureSpec
from .verify import CHECKS, DEFAULT_ZETA, cauchy_pompeiu, run_checks, sweep

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ELLIPTICITY = 2
EXIT_OUTSIDE = 3
EXIT_USAGE = 64

CSV_COLUMNS = (
    "alpha", "beta", "check", "abs_error", "passed", "reason",
    "computed_re", "computed_im", "reference_re", "reference_im",
    "tolerance", "n_theta", "n_r",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _zeta(text):
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return ElComplex(vals[0], vals[1])


def _function(text):
    try:
        return function_from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad function descriptor {text!r}: {exc}")


def _checks(text):
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return names


def _domain_spec(text):
    kind, _, radius = text.partition(":")
    try:
        r = float(radius)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected disk:<r> or ellipse:<r>, got {text!r}")
    if kind not in ("disk", "ellipse") or not (r > 0 and math.isfinite(r)):
        raise argparse.ArgumentTypeError(f"expected disk:<r> or ellipse:<r> with r > 0, got {text!r}")
    return kind, r


def _grid_points(text):
    pts = []
    for chunk in text.split(";"):
        if chunk.strip():
            vals = _floats(chunk)
            if len(vals) != 2:
                raise argparse.ArgumentTypeError(f"expected ALPHA,BETA pairs, got {chunk!r}")
            pts.append(tuple(vals))
    return pts


def _build_domain(desc, p):
    kind, r = desc
    if kind == "disk":
        return Disk(r)
    return AlgEllipseDisk(r, p)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-theta", type=int, default=512, help="angular / contour nodes")
    common.add_argument("--n-r", type=int, default=64, help="radial Gauss-Legendre nodes")
    common.add_argument("--function", type=_function, default=None,
                        help='JSON descriptor, e.g. \'{"kind":"tilde_power","n":3}\'')
    common.add_argument("--zeta", type=_zeta, default=DEFAULT_ZETA, help="evaluation point RE,IM")
    common.add_argument("--domain", type=_domain_spec, default=("disk", 1.0),
                        help="disk:<r> or ellipse:<r>, centred at the origin")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = _Parser(prog="elcauchy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pv = sub.add_parser("verify", parents=[common], help="run the verification checks at one (alpha, beta)")
    pv.add_argument("--alpha", type=float, required=True)
    pv.add_argument("--beta", type=float, required=True)
    pv.add_argument("--checks", type=_checks, default=list(CHECKS))
    pv.add_argument("--format", choices=("json", "csv"), default="json")

    pr = sub.add_parser("reconstruct", parents=[common], help="reconstruct f(zeta) by Cauchy-Pompeiu")
    pr.add_argument("--alpha", type=float, required=True)
    pr.add_argument("--beta", type=float, required=True)
    pr.add_argument("--tolerance", type=float, default=1e-6)
    pr.add_argument("--format", choices=("json", "csv"), default="json")

    ps = sub.add_parser("sweep", parents=[common], help="run checks over a parameter grid")
    ps.add_argument("--alphas", type=_floats, default=None, help="comma-separated alpha values")
    ps.add_argument("--betas", type=_floats, default=None, help="comma-separated beta values")
    ps.add_argument("--points", type=_grid_points, default=None, help='explicit pairs "a,b;a,b"')
    ps.add_argument("--checks", type=_checks, default=list(CHECKS))
    ps.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _csv_row(rep):
    d = rep.to_json()

    def part(key, comp):
        v = d[key]
        return "" if v is None else repr(v[comp])

    return [
        "" if rep.alpha is None else repr(rep.alpha),
        "" if rep.beta is None else repr(rep.beta),
        rep.check,
        "" if d["abs_error"] is None else repr(d["abs_error"]),
        "true" if rep.passed else "false",
        rep.reason or "",
        part("computed", "re"), part("computed", "im"),
        part("reference", "re"), part("reference", "im"),
        repr(rep.tolerance), str(rep.n_theta), str(rep.n_r),
    ]


def render(reports, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_json(), sort_keys=False) + "\n" for r in reports)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(_csv_row(r))
    return buf.getvalue()


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _spec(args):
    try:
        return QuadratureSpec(args.n_theta, args.n_r)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_verify(args) -> int:
    spec = _spec(args)
    p = make_params(args.alpha, args.beta)
    reports = run_checks(p, args.checks, spec, function=args.function, zeta=args.zeta,
                         domain=_build_domain(args.domain, p))
    _emit(render(reports, args.format), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_reconstruct(args) -> int:
    spec = _spec(args)
    p = make_params(args.alpha, args.beta)
    f = args.function or SmoothNonHolo("z")
    d = _build_domain(args.domain, p)
    rep = cauchy_pompeiu(f, d, args.zeta, p, spec, tolerance=args.tolerance)
    _emit(render([rep], args.format), args.out)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_sweep(args) -> int:
    spec = _spec(args)
    grid = []
    if args.alphas is not None or args.betas is not None:
        grid.extend(itertools.product(args.alphas or [1.0], args.betas or [0.0]))
    if args.points:
        grid.extend(args.points)
    if not grid:
        raise UsageError("empty grid: give --alphas/--betas or --points")
    if args.domain[0] == "ellipse":
        raise UsageError("sweep supports disk domains only")
    reports = sweep(grid, args.checks, spec, function=args.function, zeta=args.zeta,
                    domain=Disk(args.domain[1]))
    _emit(render(reports, args.format), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


COMMANDS = {"verify": cmd_verify, "reconstruct": cmd_reconstruct, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except EllipticityViolation as exc:
        print(f"elcauchy: {exc}", file=sys.stderr)
        return EXIT_ELLIPTICITY
    except PoleOutsideDomain as exc:
        print(f"elcauchy: {exc}", file=sys.stderr)
        return EXIT_OUTSIDE
    except (UsageError, ValueError) as exc:
        print(f"elcauchy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
