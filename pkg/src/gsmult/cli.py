"""Command-line entry point.

Subcommands mirror the library modules: ``table``, ``verify coeffs``,
``verify identities``, ``gs bound``, ``gs seminorm``, ``wedge classify``,
``wedge figure``, ``probe run``, ``probe criterion``.

Exit status contract: 0 on success with all checks passing, 1 when any
check reports a failure, 2 on usage errors -- so the verifiers double as CI
tests.  All numeric output is written as decimal (or exact ``p/q``)
strings; identical argv produces identical output bytes regardless of
``--threads``.  The environment variable GSM_PRECISION_BITS overrides the
default precision when ``--precision-bits`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import derivpoly, gsfunc, identities, oracle, probe, wedge
from ._util import format_fraction, format_mpf, parse_fraction


class UsageError(Exception):
    pass


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError("not a rational number: %r" % text) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsmult", description=__doc__.split("\n")[0])
    parser.add_argument("--precision-bits", type=int, default=None, help="override default working precision")
    parser.add_argument("--threads", type=int, default=1, help="worker fan-out for sweeps (same output bytes)")
    parser.add_argument("--out-dir", type=Path, default=None, help="directory prefixed to relative output paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="build a coefficient table and export it as JSON")
    p_table.add_argument("--m", type=int, required=True)
    p_table.add_argument("--kmax", type=int, required=True)
    p_table.add_argument("--out", type=Path, required=True)

    p_verify = sub.add_parser("verify", help="exact verification suites")
    verify_sub = p_verify.add_subparsers(dest="verify_command", required=True)

    p_coeffs = verify_sub.add_parser("coeffs", help="certify the table against the independent oracles")
    p_coeffs.add_argument("--m", type=int, required=True)
    p_coeffs.add_argument("--kmax", type=int, required=True)
    p_coeffs.add_argument("--json", type=Path, default=None, help="write the oracle report as JSON")

    p_ident = verify_sub.add_parser("identities", help="run the exact identity and bound checks")
    p_ident.add_argument("--m", type=int, required=True)
    p_ident.add_argument("--kmax", type=int, required=True)
    p_ident.add_argument("--theta", type=_fraction_arg, required=True, help="rational, e.g. 2/3")
    p_ident.add_argument("--jmax", type=int, default=3)
    p_ident.add_argument("--grid-size", type=int, default=256)
    p_ident.add_argument("--json", type=Path, default=None)

    p_gs = sub.add_parser("gs", help="derivative-bound sweeps and seminorm estimates")
    gs_sub = p_gs.add_subparsers(dest="gs_command", required=True)

    p_bound = gs_sub.add_parser("bound", help="empirical factorial bound for exp(-<x>**(1/theta))")
    p_bound.add_argument("--theta", type=_fraction_arg, required=True)
    p_bound.add_argument("--kmax", type=int, required=True)
    p_bound.add_argument("--slope-tol", type=float, default=1e-3)

    p_semi = gs_sub.add_parser("seminorm", help="truncated seminorm estimate, cells to CSV")
    p_semi.add_argument("--kind", choices=("a", "h"), required=True)
    p_semi.add_argument("--a", type=_fraction_arg, default=None)
    p_semi.add_argument("--h", type=_fraction_arg, default=None)
    p_semi.add_argument("--theta", type=_fraction_arg, required=True)
    p_semi.add_argument("--s", type=_fraction_arg, required=True)
    p_semi.add_argument("--kmax", type=int, required=True)
    p_semi.add_argument("--max-power", type=int, default=10)
    p_semi.add_argument("--f", choices=("gs", "gaussian"), default="gs", help="which function to estimate")
    p_semi.add_argument("--grid", default=None, help="XMAX:N -> {0} plus N halvings of XMAX")
    p_semi.add_argument("--csv", type=Path, default=None, help="write the (k, x, value) cells")

    p_wedge = sub.add_parser("wedge", help="parameter-quadrant classification")
    wedge_sub = p_wedge.add_subparsers(dest="wedge_command", required=True)

    p_cls = wedge_sub.add_parser("classify", help="classify one (theta, s) query")
    p_cls.add_argument("--theta", type=_fraction_arg, required=True)
    p_cls.add_argument("--s", type=_fraction_arg, required=True)
    p_cls.add_argument("--m", type=int, required=True)
    p_cls.add_argument("--space", choices=("roumieu", "beurling"), required=True)
    p_cls.add_argument("--d", type=int, default=1)
    p_cls.add_argument("--monomial", action="store_true", help="phase is exactly +/- x**m")
    p_cls.add_argument("--propagator", action="store_true")
    p_cls.add_argument("--t-nonzero", action="store_true", default=None)

    p_fig = wedge_sub.add_parser("figure", help="emit the region quadrant as CSV or SVG")
    p_fig.add_argument("--m", type=int, required=True)
    p_fig.add_argument("--space", choices=("roumieu", "beurling"), default="roumieu")
    p_fig.add_argument("--format", choices=("csv", "svg"), required=True)
    p_fig.add_argument("--out", type=Path, required=True)
    p_fig.add_argument("--monomial", action="store_true")
    p_fig.add_argument("--theta-min", type=_fraction_arg, default=Fraction(1, 20))
    p_fig.add_argument("--theta-max", type=_fraction_arg, default=Fraction(2))
    p_fig.add_argument("--theta-step", type=_fraction_arg, default=Fraction(1, 20))
    p_fig.add_argument("--s-min", type=_fraction_arg, default=Fraction(1, 20))
    p_fig.add_argument("--s-max", type=_fraction_arg, default=Fraction(4))
    p_fig.add_argument("--s-step", type=_fraction_arg, default=Fraction(1, 20))

    p_probe = sub.add_parser("probe", help="growth probe along k")
    probe_sub = p_probe.add_subparsers(dest="probe_command", required=True)

    p_run = probe_sub.add_parser("run", help="emit per-order records as CSV")
    p_run.add_argument("--m", type=int, required=True)
    p_run.add_argument("--theta", type=_fraction_arg, required=True)
    p_run.add_argument("--nu", type=_fraction_arg, required=True)
    p_run.add_argument("--kmax", type=int, required=True)
    p_run.add_argument("--sign", choices=("+", "-"), default="+")
    p_run.add_argument("--kj-only", action="store_true", help="restrict orders to the k_j subsequence")
    p_run.add_argument("--csv", type=Path, required=True)

    p_crit = probe_sub.add_parser("criterion", help="multiplier-criterion divergence check")
    p_crit.add_argument("--m", type=int, required=True)
    p_crit.add_argument("--theta", type=int, required=True)
    p_crit.add_argument("--s", type=_fraction_arg, required=True)
    p_crit.add_argument("--jmax", type=int, required=True)

    return parser


def _resolve(path: Path | None, out_dir: Path | None) -> Path | None:
    if path is None:
        return None
    if out_dir is not None and not path.is_absolute():
        out_dir.mkdir(parents=True, exist_ok=True)
        return out_dir / path
    return path


def _require_m(m: int) -> None:
    if m < 2:
        raise UsageError("--m must be an integer >= 2")


def _print_check(result: identities.CheckResult) -> None:
    status = "PASS" if result.passed else "FAIL"
    extra = ""
    if result.extremal_ratio is not None:
        extra = "  extremal=%s" % format_mpf(result.extremal_ratio, 10)
    print("%-34s %s%s" % (result.name, status, extra))
    for w in result.witnesses[:10]:
        print("    witness: %s" % (w,))


def _cmd_table(args) -> int:
    _require_m(args.m)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    table = derivpoly.build_coeff_table(args.m, args.kmax)
    out = _resolve(args.out, args.out_dir)
    out.write_text(table.to_json(indent=None, separators=(",", ":")) + "\n", encoding="utf-8")
    print("wrote table m=%d kmax=%d to %s" % (args.m, args.kmax, out))
    return 0


def _cmd_verify_coeffs(args) -> int:
    _require_m(args.m)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    table = derivpoly.build_coeff_table(args.m, args.kmax)
    report = oracle.certify(table, threads=args.threads)
    json_path = _resolve(args.json, args.out_dir)
    if json_path is not None:
        json_path.write_text(report.to_json(indent=2) + "\n", encoding="utf-8")
    if report.certified:
        print("coefficients certified: m=%d, k in 1..%d" % (args.m, args.kmax))
        return 0
    print("DISCREPANCIES: %d cells" % len(report.discrepancies))
    for d in report.discrepancies[:20]:
        print("    k=%s n=%s table=%s oracle=%s" % d)
    return 1


def _cmd_verify_identities(args) -> int:
    _require_m(args.m)
    if args.kmax < 2:
        raise UsageError("--kmax must be >= 2")
    theta = args.theta
    if theta < Fraction(2, args.m):
        raise UsageError("--theta must be >= 2/m")
    table = derivpoly.build_coeff_table(args.m, max(args.kmax, 4))
    results = [
        identities.check_floor_identities(args.m, args.kmax),
        identities.check_ck1_closed_form(table),
        identities.check_ck2_bound(table),
        identities.check_ratio_bound(table, theta),
        identities.check_wedge_fn_nonneg(args.m, theta, grid_size=args.grid_size),
    ]
    if theta.denominator == 1:
        results.append(
            identities.check_lower_bound(args.m, 1, theta.numerator, args.jmax)
        )
    else:
        print("evaluation-lower-bound skipped: requires an integer --theta")
    for r in results:
        _print_check(r)
    json_path = _resolve(args.json, args.out_dir)
    if json_path is not None:
        payload = [r.to_json_dict() for r in results]
        json_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0 if all(r.passed for r in results) else 1


def _cmd_gs_bound(args) -> int:
    if args.kmax < 4:
        raise UsageError("--kmax must be >= 4")
    bits = args.precision_bits or 256
    result = gsfunc.verify_gs_bound(args.theta, args.kmax, precision_bits=bits, slope_tol=args.slope_tol)
    _print_check(result)
    return 0 if result.passed else 1


def _parse_grid_spec(text: str):
    try:
        xmax, points = text.split(":")
        return gsfunc.geometric_grid(parse_fraction(xmax), int(points))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("--grid expects XMAX:N, got %r" % text) from exc


def _cmd_gs_seminorm(args) -> int:
    if args.kind == "a" and args.a is None:
        raise UsageError("--kind a requires --a")
    if args.kind == "h" and args.h is None:
        raise UsageError("--kind h requires --h")
    if args.kmax < 0:
        raise UsageError("--kmax must be >= 0")
    grid = _parse_grid_spec(args.grid) if args.grid else None
    f_spec = gsfunc.GSFunction(args.theta) if args.f == "gs" else gsfunc.Gaussian()
    bits = args.precision_bits or 192
    cells = gsfunc.seminorm_cells(
        args.kind,
        f_spec,
        theta=args.theta,
        s=args.s,
        a=args.a,
        h=args.h,
        max_deriv=args.kmax,
        max_power=args.max_power,
        grid=grid,
        precision_bits=bits,
    )
    estimate = gsfunc.seminorm(
        args.kind,
        f_spec,
        theta=args.theta,
        s=args.s,
        a=args.a,
        h=args.h,
        max_deriv=args.kmax,
        max_power=args.max_power,
        grid=grid,
        precision_bits=bits,
    )
    csv_path = _resolve(args.csv, args.out_dir)
    if csv_path is not None:
        lines = ["k,x,value"]
        for beta, x, value in cells:
            lines.append("%d,%s,%s" % (beta, format_fraction(x), format_mpf(value)))
        csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print("seminorm lower bound (%s-family): %s" % (args.kind, format_mpf(estimate.value)))
    return 0


def _cmd_wedge_classify(args) -> int:
    _require_m(args.m)
    t_nonzero = True if args.t_nonzero is None else bool(args.t_nonzero)
    try:
        query = wedge.WedgeQuery(
            theta=args.theta,
            s=args.s,
            m=args.m,
            space=wedge.Space(args.space),
            d=args.d,
            mode=wedge.Mode.PURE_MONOMIAL if args.monomial else wedge.Mode.GENERAL_POLYNOMIAL,
            operator=wedge.Operator.PROPAGATOR if args.propagator else wedge.Operator.MULTIPLIER,
            t_nonzero=t_nonzero,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verdict = wedge.classify(query)
    line = verdict.verdict.value
    if verdict.citation:
        line += " (%s)" % verdict.citation
    if verdict.boundary_excluded:
        line += " [boundary point excluded]"
    print(line)
    return 0


def _cmd_wedge_figure(args) -> int:
    _require_m(args.m)
    try:
        grid = wedge.GridSpec(
            theta_start=args.theta_min,
            theta_stop=args.theta_max,
            theta_step=args.theta_step,
            s_start=args.s_min,
            s_stop=args.s_max,
            s_step=args.s_step,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = _resolve(args.out, args.out_dir)
    mode = wedge.Mode.PURE_MONOMIAL if args.monomial else wedge.Mode.GENERAL_POLYNOMIAL
    wedge.emit_region_grid(
        args.m, wedge.Space(args.space), grid, args.format, out, mode=mode, threads=args.threads
    )
    print("wrote %s region grid to %s" % (args.format, out))
    return 0


def _cmd_probe_run(args) -> int:
    _require_m(args.m)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    sign = 1 if args.sign == "+" else -1
    if args.kj_only:
        k_values = []
        j = 1
        while True:
            k = derivpoly.kj_sequence(args.m, j).k(j)
            if k > args.kmax:
                break
            k_values.append(k)
            j += 1
    else:
        k_values = list(range(1, args.kmax + 1))
    try:
        cfg = probe.ProbeConfig(
            m=args.m,
            lambda_sign=sign,
            theta=args.theta,
            nu=args.nu,
            k_values=k_values,
            precision_bits=args.precision_bits,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    records = probe.probe_series(cfg)
    csv_path = _resolve(args.csv, args.out_dir)
    lines = ["k,x,log_dkg_f,rate"]
    for r in records:
        x_str = str(r.x) if isinstance(r.x, int) else format_mpf(r.x)
        lines.append("%d,%s,%s,%s" % (r.k, x_str, format_mpf(r.log_dkg_f), format_mpf(r.rate)))
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print("wrote %d records to %s" % (len(records), csv_path))
    if len(records) >= 16:
        rate = probe.estimate_rate(records)
        print("fitted growth rate (tail 1/2): %s" % format_mpf(rate, 10))
    return 0


def _cmd_probe_criterion(args) -> int:
    _require_m(args.m)
    try:
        result = probe.criterion_check(args.m, args.theta, args.s, args.jmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _print_check(result)
    return 0 if result.passed else 1


_HANDLERS = {
    ("table", None): _cmd_table,
    ("verify", "coeffs"): _cmd_verify_coeffs,
    ("verify", "identities"): _cmd_verify_identities,
    ("gs", "bound"): _cmd_gs_bound,
    ("gs", "seminorm"): _cmd_gs_seminorm,
    ("wedge", "classify"): _cmd_wedge_classify,
    ("wedge", "figure"): _cmd_wedge_figure,
    ("probe", "run"): _cmd_probe_run,
    ("probe", "criterion"): _cmd_probe_criterion,
}


def dispatch(argv) -> int:
    """Parse argv and run; returns the exit status (0 ok, 1 failed check, 2 usage)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return int(code) if code else 0
    if args.precision_bits is None:
        env_bits = os.environ.get("GSM_PRECISION_BITS")
        if env_bits:
            try:
                args.precision_bits = int(env_bits)
            except ValueError:
                print("invalid GSM_PRECISION_BITS: %r" % env_bits, file=sys.stderr)
                return 2
    subcommand = getattr(args, "%s_command" % args.command, None)
    handler = _HANDLERS[(args.command, subcommand)]
    try:
        return handler(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
