"""Command-line entry point: ``rankone-branch <command> ...``.

Every command writes a table.  CSV is a header row followed by data rows;
JSON is one object ``{"schema_version", "command", "rows"}``.  Numbers are
written as strings: exact rationals as ``a/b`` and floats with 17
significant digits, so output is lossless and byte-stable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import branching, criterion, spherical, unitarity, verify, weyl
from .corefn import BoundedValue
from .errors import DivergenceDetected, InvalidTypeError, KernelError, PoleError, RegimeError
from .families import GroupFamily, Kind

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_REGIME = 0, 1, 2, 3

# flags that change where or how output goes, not what it contains
_NOT_ECHOED = ("jobs", "out", "format", "func")


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, BoundedValue):
        x = x.exact if x.exact is not None else x.value
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, complex):
        return f"{fmt(x.real)}{'+' if x.imag >= 0 or math.isnan(x.imag) else '-'}{fmt(abs(x.imag))}j"
    if isinstance(x, float) or hasattr(x, "dtype"):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    if isinstance(x, tuple):
        return ",".join(str(v) for v in x)
    return str(x)


def parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InvalidTypeError(f"cannot read integer indices from {text!r}") from None


def parse_nu(text: str):
    """Rational strings such as ``13/2`` stay exact; anything else is a float."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"cannot read nu from {text!r}") from None


def command_echo(args) -> str:
    parts = [args.command]
    for key, val in vars(args).items():
        if key in _NOT_ECHOED or key == "command" or val is None or val is False:
            continue
        flag = "--" + key.replace("_", "-")
        parts.append(flag if val is True else f"{flag} {fmt(val)}")
    return " ".join(parts)


def emit(args, rows: list[dict]) -> None:
    rows = [{k: fmt(v) for k, v in row.items()} for row in rows]
    if args.format == "json":
        text = json.dumps({"schema_version": SCHEMA_VERSION, "command": command_echo(args),
                           "rows": rows}, indent=1) + "\n"
    else:
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        for row in rows:
            cols += [k for k in row if k not in cols]
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def family_of(args) -> GroupFamily:
    fam = GroupFamily.parse(args.family, args.n)
    return fam


def cmd_dim(args):
    fam = family_of(args)
    tau = parse_indices(args.tau)
    emit(args, [{"family": str(fam), "tau": tau, "dim": weyl.ktype_dim(fam, tau)}])
    return EXIT_OK


def cmd_phi(args):
    fam = family_of(args)
    tau = parse_indices(args.tau)
    vals = [float(v) for v in args.point.split(",")]
    pt = vals[0] if fam.kind is Kind.REAL else tuple(vals)
    v = spherical.phi_eval(fam, tau, pt)
    emit(args, [{"family": str(fam), "tau": tau, "point": args.point, "value": v.value,
                 "error_radius": v.error_radius}])
    return EXIT_OK


def cmd_lambda(args):
    fam = family_of(args)
    tau = parse_indices(args.tau)
    nu = unitarity.resolve_regime(fam, args.nu, args.regime, need_subgroup=False)
    lam = unitarity.lambda_nu(fam, nu, tau)
    emit(args, [{"family": str(fam), "nu": nu.value, "regime": nu.describe(),
                 "tau": tau, "lambda": lam}])
    return EXIT_OK


def cmd_rnorm(args):
    fam = family_of(args)
    tau, sigma = parse_indices(args.tau), parse_indices(args.sigma)
    adm = branching.is_admissible(fam, tau, sigma)
    closed = branching.restriction_norm_sq_closed(fam, tau, sigma, printed=args.printed)
    row = {"family": str(fam), "tau": tau, "sigma": sigma, "admissible": adm,
           "closed": closed}
    if args.oracle:
        if adm or (fam.kind is Kind.REAL and tau[0] >= sigma[0]):
            orc = branching.restriction_norm_sq_oracle(fam, tau, sigma, args.nodes)
            row["oracle"] = orc.value
            row["ratio"] = closed.value / orc.value if orc.value else math.nan
        else:
            row["oracle"], row["ratio"] = 0.0, math.nan
    emit(args, [row])
    return EXIT_OK


def _report_row(rep: criterion.CriterionReport) -> dict:
    return {"sigma": rep.sigma, "partial_sum": rep.partial_sum.value,
            "tail_estimate": rep.tail_estimate, "ratio": rep.ratio,
            "ratio_with_tail": rep.ratio_with_tail, "decay_exponent": rep.decay_exponent,
            "converged": rep.converged, "note": rep.note}


def cmd_criterion(args):
    fam = family_of(args)
    nu = unitarity.resolve_regime(fam, args.nu, args.regime)
    sigma = parse_indices(args.sigma)
    try:
        rep = criterion.criterion_sum(fam, nu, sigma, args.p_max)
    except DivergenceDetected as exc:
        rep = exc.report
    emit(args, [_report_row(rep)])
    return EXIT_OK


def cmd_sweep(args):
    fam = family_of(args)
    nu = unitarity.resolve_regime(fam, args.nu, args.regime)
    rep = criterion.boundedness_sweep(fam, nu, args.sigma_max, args.p_max, jobs=args.jobs)
    rows = [dict(row_type="sigma", **_report_row(r)) for r in rep.reports]
    rows += [{"row_type": "failure", "sigma": sig, "note": err} for sig, err in rep.failures]
    rows.append({"row_type": "summary", "sup_ratio": rep.sup_ratio, "drift": rep.drift,
                 "growth_exponent": rep.growth_exponent, "growth_stderr": rep.growth_stderr,
                 "verdict": rep.verdict, "vacuous": rep.vacuous,
                 "note": "no L-type outside the subgroup kernel" if rep.vacuous else ""})
    emit(args, rows)
    return EXIT_OK


def cmd_verify(args):
    checks = verify.run_suite(args.suite)
    emit(args, [{"suite": c.suite, "property": c.name, "measured": c.measured,
                 "tolerance": c.tolerance, "passed": c.passed} for c in checks])
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RANKONE_BRANCH_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankone-branch",
        description="Zonal functions, dimensions, restriction norms and "
                    "complementary-series criterion sums for rank-one groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nu=False):
        p.add_argument("--family", required=True, help="R, C, H or F4")
        p.add_argument("--n", type=int, help="rank parameter (omit for F4)")
        if nu:
            p.add_argument("--nu", type=parse_nu, help="parameter, e.g. 13/2")
            p.add_argument("--regime", help="complementary or quotient:K "
                                            "(complex K=0: quotient:0+, quotient:0-, quotient:0)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("dim", help="dimension of a K-type")
    common(p)
    p.add_argument("--tau", required=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("phi", help="zonal spherical function at a point")
    common(p)
    p.add_argument("--tau", required=True)
    p.add_argument("--point", required=True, help="x1, or xi,theta / xi,eta")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("lambda", help="unitarity constant of a K-type")
    common(p, nu=True)
    p.add_argument("--tau", required=True)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("rnorm", help="squared norm of a restriction block")
    common(p)
    p.add_argument("--tau", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--oracle", action="store_true", help="also compute the quadrature oracle")
    p.add_argument("--nodes", type=int, help="quadrature nodes for the oracle")
    p.add_argument("--printed", action="store_true",
                   help="quaternionic variant with the -1 middle factor")
    p.set_defaults(func=cmd_rnorm)

    p = sub.add_parser("criterion", help="criterion sum for one L-type")
    common(p, nu=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--p-max", type=int, default=10_000)
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("sweep", help="boundedness sweep over L-types")
    common(p, nu=True)
    p.add_argument("--sigma-max", type=int, default=200)
    p.add_argument("--p-max", type=int, default=10_000)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", default="all", choices=verify.SUITES + ("all",))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (InvalidTypeError, KernelError, PoleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
