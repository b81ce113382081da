"""Command-line front end: g2lab {eval,sweep,figure,classify,optimize-alpha,oracle-check}.

Exit codes: 0 success, 1 a check failed (figure checkpoint, oracle deviation),
2 invalid input, 3 the Fock oracle could not be converged or the request is
outside its verification envelope.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, coherence, fock, figures
from .errors import (
    DegenerateSqueeze,
    DimensionTooSmall,
    EigenFailure,
    ExistenceViolation,
    InvalidParameter,
    NegativeDiscriminant,
    TruncationError,
    ZeroDenominator,
)
from .gaussian import FORMS, HEISENBERG, ROTATED, GaussianParams

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_TRUNCATION = 0, 1, 2, 3
ORACLE_REL_TOL = 1e-6
NUM_FMT = ".15e"


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), NUM_FMT)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _add_state_args(p, need_r=True):
    p.add_argument("--nbar", type=float, required=True, help="thermal occupation (>= 0)")
    p.add_argument("--r", type=float, required=need_r, default=None,
                   help="squeeze magnitude (>= 0)")
    p.add_argument("--alpha", type=float, default=0.0, help="displacement magnitude |alpha|")
    p.add_argument("--theta-minus-2phi", type=float, default=None,
                   help="phase difference theta - 2 phi (default 0)")
    p.add_argument("--theta", type=float, default=None, help="squeeze phase")
    p.add_argument("--phi", type=float, default=None, help="displacement phase")
    p.add_argument("--prep-time", type=float, default=1.0, help="preparation time t (> 0)")


def _add_io_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="write to this path instead of stdout")


def _add_form_arg(p, default):
    p.add_argument("--amplitude", choices=FORMS, default=default,
                   help=f"form of the displaced amplitude A(tau) (default {default})")


def _add_lag_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--omega-tau", type=float, help="dimensionless lag Omega*tau")
    g.add_argument("--tau-over-t", type=float, help="lag in units of the preparation time")


def _state(args) -> GaussianParams:
    if args.theta_minus_2phi is not None and (args.theta is not None or args.phi is not None):
        raise InvalidParameter("give either --theta-minus-2phi or --theta/--phi, not both")
    r = 0.0 if args.r is None else args.r
    if args.theta is not None or args.phi is not None:
        return GaussianParams(nbar=args.nbar, r=r, theta=args.theta or 0.0,
                              alpha_mag=args.alpha, phi=args.phi or 0.0,
                              prep_time=args.prep_time)
    return GaussianParams.with_phase_difference(
        nbar=args.nbar, r=r, alpha_mag=args.alpha,
        theta_minus_2phi=args.theta_minus_2phi or 0.0, prep_time=args.prep_time)


def _omega_tau(args, g) -> float:
    if args.omega_tau is not None:
        return args.omega_tau
    return args.tau_over_t * g.r


POINT_COLUMNS = ("omega_tau", "tau_over_t", "g2", "mean_n")


def _point_row(pt):
    return [pt.omega_tau, pt.tau_over_t, pt.g2, pt.mean_n]


def cmd_eval(args) -> int:
    g = _state(args)
    if g.r == 0:
        if args.tau_over_t is None:
            raise InvalidParameter("r = 0 needs --tau-over-t (Omega = r/t vanishes)")
        pt = coherence.g2_displaced_thermal(g.nbar, g.alpha_mag, args.tau_over_t)
    else:
        pt = coherence.g2(g, _omega_tau(args, g), args.amplitude)
    if args.format == "json":
        _emit(_json_text(dict(zip(POINT_COLUMNS, _point_row(pt)))), args.output)
    else:
        _emit(_csv_text(POINT_COLUMNS, [_point_row(pt)]), args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    g = _state(args)
    if args.points < 2:
        raise InvalidParameter(f"points >= 2 violated: points={args.points}")
    if not 0 <= args.start < args.stop:
        raise InvalidParameter(f"0 <= start < stop violated: start={args.start}, stop={args.stop}")
    grid = np.linspace(args.start, args.stop, args.points)
    if g.r == 0:
        if args.axis != "tau_over_t":
            raise InvalidParameter("r = 0 sweeps need --axis tau_over_t")
        vals, mean_n = coherence.g2_displaced_thermal_curve(g.nbar, g.alpha_mag, grid)
        xs = np.zeros_like(grid)
        ts = grid
    else:
        xs = grid if args.axis == "omega_tau" else grid * g.r
        ts = xs / g.r
        vals, mean_n = coherence.g2_curve(g, xs, args.amplitude)
    rows = np.column_stack([xs, ts, vals, mean_n])
    if args.format == "json":
        _emit(_json_text([dict(zip(POINT_COLUMNS, map(float, row))) for row in rows]),
              args.output)
    else:
        _emit(_csv_text(POINT_COLUMNS, rows), args.output)
    return EXIT_OK


def _sidecar_path(output: str) -> Path:
    p = Path(output)
    return p.with_name(p.stem + ".checkpoints.json")


def cmd_figure(args) -> int:
    fig = figures.figure(args.figure_id)
    cps = [c.as_dict() for c in fig.checkpoints]
    if args.format == "json":
        payload = {"figure": fig.figure_id, "axis": fig.axis, "columns": list(fig.columns),
                   "data": fig.data.tolist(), "checkpoints": cps, "passed": fig.passed}
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv_text(fig.columns, fig.data), args.output)
        side = {"figure": fig.figure_id, "axis": fig.axis, "checkpoints": cps,
                "passed": fig.passed}
        if args.output is None:
            sys.stderr.write(_json_text(side))
        else:
            _sidecar_path(args.output).write_text(_json_text(side))
    for c in fig.checkpoints:
        if not c.passed:
            print(f"checkpoint {c.name}: {c.value!r} vs {c.expected} +/- {c.tolerance}",
                  file=sys.stderr)
    return EXIT_OK if fig.passed else EXIT_CHECK


def cmd_classify(args) -> int:
    g = _state(args)
    if g.r == 0:
        if args.axis != "tau_over_t":
            raise InvalidParameter("r = 0 classification needs --axis tau_over_t")
        rep = analysis.classify_displaced_thermal(g.nbar, g.alpha_mag, args.max, args.grid)
    else:
        x_max = args.max if args.axis == "omega_tau" else args.max * g.r
        rep = analysis.classify(g, x_max, args.grid, args.amplitude)
    d = rep.as_dict()
    d["classical"] = rep.classical
    if args.format == "json":
        _emit(_json_text(d), args.output)
        return EXIT_OK
    rows = []
    for key, val in d.items():
        if key == "violation_intervals":
            for iv in val:
                rows.append([f"violation:{iv['which']}", f"{_fmt(iv['lo'])};{_fmt(iv['hi'])}"])
        elif isinstance(val, (list, tuple)):
            rows.append([key, ";".join(_fmt(v) for v in val)])
        elif val is None:
            rows.append([key, ""])
        else:
            rows.append([key, _fmt(val)])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    w.writerows(rows)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_optimize_alpha(args) -> int:
    if args.omega_tau < 0:
        raise InvalidParameter(f"omega_tau >= 0 violated: omega_tau={args.omega_tau}")
    thr = analysis.existence_threshold(args.nbar)
    if not args.r > thr:
        raise ExistenceViolation(f"r > ln(2 nbar + 1)/2 = {thr!r} violated: r={args.r}")
    opt = analysis.minimize_over_alpha(args.nbar, args.r, args.omega_tau, args.amplitude)
    cols = ("nbar", "r", "omega_tau", "alpha_mag", "g2_min", "branch_valid")
    row = [args.nbar, args.r, args.omega_tau, opt.alpha_mag, opt.g2_min, opt.branch_valid]
    if args.format == "json":
        _emit(_json_text(dict(zip(cols, row))), args.output)
    else:
        _emit(_csv_text(cols, [row]), args.output)
    return EXIT_OK if opt.branch_valid else EXIT_CHECK


def cmd_oracle_check(args) -> int:
    g = _state(args)
    x = _omega_tau(args, g)
    fock.check_envelope(g, x)
    closed = coherence.g2(g, x, args.amplitude).g2
    res = fock.g2_oracle_detailed(g, x, dim_max=args.dim_max)
    dev = abs(res.g2 - closed)
    rel = dev / abs(closed)
    cols = ("omega_tau", "g2_closed", "g2_oracle", "abs_dev", "rel_dev", "dim", "tail")
    row = [x, closed, res.g2, dev, rel, res.dim, res.tail]
    if args.format == "json":
        d = dict(zip(cols, row))
        d["dim"] = res.dim
        d["tolerance"] = ORACLE_REL_TOL
        _emit(_json_text(d), args.output)
    else:
        _emit(_csv_text(cols, [row]), args.output)
    return EXIT_OK if rel <= ORACLE_REL_TOL else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2lab", description="Second-order coherence of displaced-squeezed thermal light.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="g2 at a single lag")
    _add_state_args(p)
    _add_lag_args(p)
    _add_form_arg(p, ROTATED)
    _add_io_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="g2 over a uniform grid of lags")
    _add_state_args(p)
    p.add_argument("--axis", choices=("omega_tau", "tau_over_t"), default="omega_tau")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, default=1000)
    _add_form_arg(p, ROTATED)
    _add_io_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="reference curve and checkpoints")
    p.add_argument("figure_id", help="one of " + ", ".join(figures.FIGURE_IDS))
    _add_io_args(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("classify", help="classical-inequality report")
    _add_state_args(p)
    p.add_argument("--axis", choices=("omega_tau", "tau_over_t"), default="omega_tau")
    p.add_argument("--max", type=float, default=5.0, help="upper end of the scanned lag range")
    p.add_argument("--grid", type=int, default=analysis.DEFAULT_GRID)
    _add_form_arg(p, ROTATED)
    _add_io_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("optimize-alpha", help="|alpha| minimising g2 with theta = 2 phi")
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--omega-tau", type=float, default=0.0)
    _add_form_arg(p, ROTATED)
    _add_io_args(p)
    p.set_defaults(func=cmd_optimize_alpha)

    p = sub.add_parser("oracle-check", help="closed form against the truncated Fock oracle")
    _add_state_args(p)
    _add_lag_args(p)
    p.add_argument("--dim-max", type=int, default=None,
                   help=f"truncation cap (default ${fock.DIM_MAX_ENV} or {fock.DEFAULT_DIM_MAX})")
    _add_form_arg(p, HEISENBERG)
    _add_io_args(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TruncationError as exc:
        print(f"g2lab: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (NegativeDiscriminant, EigenFailure) as exc:
        print(f"g2lab: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (InvalidParameter, DegenerateSqueeze, ZeroDenominator, ExistenceViolation,
            DimensionTooSmall, ValueError) as exc:
        print(f"g2lab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
