"""Command-line interface.

Subcommands: ``j`` (one variational constant), ``beta-b`` (threshold, single
b or sweep), ``estimates`` (analytic bounds over a sweep), ``simulate``
(pseudo-spectral run with blow-up report).

Conventions: CSV files are UTF-8 with LF line endings, a header row, comma
delimiter, and floats rendered with Python's shortest round-trip repr; JSON
objects have a fixed key order.  Exit codes: 0 success, 1 usage error,
2 domain error, 3 internal error.  Relative output paths are resolved
against ``BFAMILY_OUT_DIR`` when that variable is set.  Every invocation
that writes files also writes a ``<stem>.manifest.json`` referencing them.
"""

import argparse
import datetime
import io
import json
import os
import sys
from importlib.metadata import PackageNotFoundError, version as _pkg_version

from . import estimates as est_mod
from . import sim as sim_mod
from . import threshold as thr_mod
from .errors import BFamilyError
from .variational import compute_j, compute_j_bvp, compute_j_direct

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here is exit 1.
    def error(self, message):
        raise _UsageError(message)


def _tool_version() -> str:
    try:
        return _pkg_version("bfamily")
    except PackageNotFoundError:
        return "unknown"


def _fmt(value) -> str:
    """Shortest round-trip text for a CSV cell; empty cell for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _resolve_out(path: str) -> str:
    base = os.environ.get("BFAMILY_OUT_DIR")
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    return path


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "command")}


def _write_manifest(stem: str, command: str, params: dict, outputs: list, rows=None):
    manifest = {
        "command": command,
        "parameters": params,
        "tool_version": _tool_version(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "outputs": outputs,
    }
    if rows is not None:
        manifest["row_status"] = rows
    path = stem + ".manifest.json"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_sweep(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"sweep must be min:max:steps (got {text!r})")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _UsageError(f"bad sweep range {text!r}: {exc}") from exc
    if steps < 1:
        raise _UsageError("sweep steps must be >= 1")
    return lo, hi, steps


def _csv_lines(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(cell) for cell in row) + "\n")
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return None
    path = _resolve_out(out)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


# ---------------------------------------------------------------- commands


def _cmd_j(args) -> int:
    if args.method == "bvp":
        res = compute_j_bvp(args.b, args.beta, n=args.grid)
    elif args.method == "direct":
        res = compute_j_direct(args.b, args.beta, n=args.grid)
    else:
        res = compute_j(args.b, args.beta, n=args.grid)
    payload = {
        "b": res.b,
        "beta": res.beta,
        "value": res.value,
        "method": res.method,
        "error_estimate": res.error_estimate,
    }
    text = _dump_json(payload)
    sys.stdout.write(text)
    if args.json:
        path = _emit(text, args.json)
        _write_manifest(os.path.splitext(path)[0], "j", _params(args), [path])
    return EXIT_OK


_BETAB_HEADER = ["b", "beta_b", "status", "uncertainty", "est1", "est2", "est3"]


def _est_cell(e):
    if e is not None and e.valid and e.bound is not None:
        return e.bound
    return None


def _cmd_beta_b(args) -> int:
    if (args.b is None) == (args.sweep is None):
        raise _UsageError("give exactly one of --b or --sweep")
    if args.b is not None:
        rows_src = thr_mod.sweep(args.b, args.b, 1, tol=args.tol)
    else:
        lo, hi, steps = _parse_sweep(args.sweep)
        rows_src = thr_mod.sweep(lo, hi, steps, tol=args.tol)

    rows, statuses, ok = [], [], 0
    for row in rows_src:
        if row.result is None:
            rows.append([row.b, None, f"ERROR:{row.error}", None, None, None, None])
            statuses.append({"b": row.b, "status": "error", "detail": row.error})
            continue
        ok += 1
        r = row.result
        rows.append([
            row.b, r.beta_b, r.status, r.uncertainty,
            _est_cell(row.est1), _est_cell(row.est2), _est_cell(row.est3),
        ])
        statuses.append({"b": row.b, "status": r.status})
    text = _csv_lines(_BETAB_HEADER, rows)
    path = _emit(text, args.out)
    if path:
        _write_manifest(os.path.splitext(path)[0], "beta-b", _params(args), [path], statuses)
    return EXIT_OK if ok or not rows else EXIT_DOMAIN


_EST_HEADER = [
    "b", "est1", "est1_valid", "est2", "est2_valid", "est3", "est3_valid",
    "alpha", "gamma", "status",
]


def _cmd_estimates(args) -> int:
    lo, hi, steps = _parse_sweep(args.sweep)
    th = est_mod.thresholds()
    bs = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)] if steps > 1 else [lo]
    rows, statuses, ok = [], [], 0
    for b in bs:
        try:
            e1, e2, e3 = est_mod.estimate1(b), est_mod.estimate2(b), est_mod.estimate3(b)
            rows.append([
                b, e1.bound, e1.valid, e2.bound, e2.valid, e3.bound, e3.valid,
                th["alpha"], th["gamma"], "ok",
            ])
            statuses.append({"b": b, "status": "ok"})
            ok += 1
        except BFamilyError as exc:
            rows.append([b, None, None, None, None, None, None,
                         th["alpha"], th["gamma"], f"ERROR:{exc}"])
            statuses.append({"b": b, "status": "error", "detail": str(exc)})
    text = _csv_lines(_EST_HEADER, rows)
    path = _emit(text, args.out)
    if path:
        _write_manifest(os.path.splitext(path)[0], "estimates", _params(args), [path], statuses)
    return EXIT_OK if ok else EXIT_DOMAIN


def _initial_condition(args) -> sim_mod.TorusField:
    if args.ic == "const":
        return sim_mod.TorusField.constant(args.amp, args.n)
    if args.ic == "cos":
        return sim_mod.TorusField.cosine(args.amp, args.n)
    if args.ic == "oddsine":
        return sim_mod.TorusField.odd_sine(args.amp, args.n)
    if args.ic == "fourier":
        if not args.coeffs:
            raise _UsageError("--ic fourier requires --coeffs")
        try:
            vals = [float(tok) for tok in args.coeffs.split(",")]
        except ValueError as exc:
            raise _UsageError(f"bad --coeffs: {exc}") from exc
        # a0, a1, b1, a2, b2, ...: cosine and sine amplitudes per mode
        cos_c = [vals[0]] + vals[1::2]
        sin_c = [0.0] + vals[2::2]
        return sim_mod.TorusField.from_coefficients(cos_c, sin_c, args.n)
    raise _UsageError(f"unknown initial condition {args.ic!r}")


def _cmd_simulate(args) -> int:
    u0 = _initial_condition(args)
    cfg = sim_mod.SimConfig(
        b=args.b, t_max=args.t_max, cfl=args.cfl,
        blowup_slope_threshold=args.slope_threshold,
        dealias=not args.no_dealias,
    )
    beta_b = args.beta_b
    if beta_b is None:
        if args.criterion_beta == "estimate":
            e3 = est_mod.estimate3(args.b)
            beta_b = e3.bound if e3.valid else None
        else:
            res = thr_mod.compute_beta_b(args.b, tol=args.beta_b_tol)
            beta_b = res.beta_b if res.status == thr_mod.STATUS_FINITE else None

    trajectory, report = sim_mod.integrate(u0, cfg, beta_b=beta_b)

    payload = {
        "b": args.b,
        "ic": args.ic,
        "amp": args.amp,
        "n": args.n,
        "beta_b": beta_b,
        "detected": report.detected,
        "t_detect": report.t_detect,
        "resolution_loss": report.resolution_loss,
        "stop_reason": report.stop_reason,
        "lifespan_bound": report.lifespan_bound,
        "criterion_points": [
            {"x": p.x, "u0": p.u0, "du0": p.du0, "margin": p.margin}
            for p in report.criterion_points
        ],
    }
    text = _dump_json(payload)
    sys.stdout.write(text)

    if args.out:
        stem = _resolve_out(args.out)
        report_path = stem + ".report.json"
        with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        series_rows = [
            [t, s, m, h, q]
            for (t, s), m, h, q in zip(
                report.min_slope_history, trajectory.mean_history,
                trajectory.h1_history, trajectory.tail_history,
            )
        ]
        series_text = _csv_lines(["t", "min_slope", "mean", "h1_energy", "tail_fraction"],
                                 series_rows)
        series_path = stem + ".series.csv"
        with open(series_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(series_text)
        _write_manifest(stem, "simulate", _params(args), [report_path, series_path])
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="bfamily",
                     description="Blow-up thresholds for the periodic b-family of equations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("j", help="compute the variational constant J(b, beta)")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--method", choices=["auto", "bvp", "direct"], default="auto")
    p.add_argument("--json", help="also write the JSON result to this path")
    p.set_defaults(fn=_cmd_j)

    p = sub.add_parser("beta-b", help="compute the blow-up threshold")
    p.add_argument("--b", type=float)
    p.add_argument("--sweep", help="b range as min:max:steps (inclusive)")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(fn=_cmd_beta_b)

    p = sub.add_parser("estimates", help="tabulate the analytic bounds")
    p.add_argument("--sweep", required=True, help="b range as min:max:steps (inclusive)")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(fn=_cmd_estimates)

    p = sub.add_parser("simulate", help="run the pseudo-spectral solver")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--ic", choices=["const", "cos", "oddsine", "fourier"], required=True)
    p.add_argument("--amp", type=float, default=1.0)
    p.add_argument("--coeffs", help="a0,a1,b1,a2,b2,... for --ic fourier")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--cfl", type=float, default=0.3)
    p.add_argument("--slope-threshold", type=float, default=1e4)
    p.add_argument("--no-dealias", action="store_true")
    p.add_argument("--beta-b", type=float, help="use this threshold value directly")
    p.add_argument("--beta-b-tol", type=float, default=1e-4)
    p.add_argument("--criterion-beta", choices=["numeric", "estimate"], default="numeric",
                   help="threshold source for the criterion check")
    p.add_argument("--out", help="output stem for report/series/manifest files")
    p.set_defaults(fn=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BFamilyError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
