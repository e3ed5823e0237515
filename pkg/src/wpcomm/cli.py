"""Command-line entry point: ``wpcomm {sweep,optimize,verify,figure}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import analytic_interf as ai
from . import analytic_noise as an
from . import montecarlo as mc
from . import optimize, verification
from .model import InterferenceParams, SystemParams, format_config, load_config
from .presets import FIGURES
from .sweep import ESTIMATORS, VARIABLES, SweepError, SweepSpec, run_sweep

log = logging.getLogger("wpcomm")

MIN_VERIFY_TRIALS = 10**4


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _trials(text):
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError("not a trial count: %r" % text) from None
    if value < 1:
        raise argparse.ArgumentTypeError("trials must be positive")
    return value


def _range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must look like lo:hi:steps")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError("bad range %r" % text) from None


def _tau(text):
    if text == "opt":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("tau must be a number in (0,1) or 'opt'") from None


def _seed(args, default):
    return default if args.seed is None else args.seed


def _load(args):
    if args.config:
        try:
            return load_config(args.config)
        except (OSError, ValueError) as exc:
            raise SweepError("config %s: %s" % (args.config, exc)) from None
    return SystemParams(), None


def _emit(text: str, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def cmd_sweep(args):
    params, interf = _load(args)
    if args.scenario == "interf" and interf is None:
        interf = InterferenceParams()
    lo, hi, steps = args.range
    spec = SweepSpec(args.var, lo, hi, steps, params=params, interf=interf, mode=args.mode,
                     scenario=args.scenario, estimator=args.estimator, tau=args.tau,
                     trials=args.trials, seed=_seed(args, 0))
    curve = run_sweep(spec)
    _emit(curve.to_csv(), args.out)
    return 0


def _optimize_rows(params, interf):
    rows = []

    def add(mode, scenario, name, fn):
        try:
            r = fn()
            rows.append((mode, scenario, name, "%.10f" % r.tau_star, "%.10g" % r.objective_value))
        except (ValueError, ArithmeticError) as exc:
            rows.append((mode, scenario, name, "n/a", str(exc)))

    add("dc", "noise", "exact", lambda: an.tau_star_dc_exact(params))
    add("dc", "noise", "highP", lambda: an.tau_star_highP(params))
    add("dc", "noise", "largeN", lambda: an.tau_star_largeN(params))
    add("dt", "noise", "exact", lambda: an.tau_star_dt_exact(params))
    add("dt", "noise", "lower-bound", lambda: an.tau_star_dt_lower(params))
    add("dt", "noise", "highsnr", lambda: an.tau_star_dt_highsnr(params))
    if interf is not None:
        add("dc", "interf", "exact", lambda: ai.tau_star_dc_interference(params, interf))
        add("dc", "interf", "upper-bound", lambda: optimize.grid_search(
            lambda t: ai.throughput_dc_upper(t, params, interf).value,
            resolution=1e-7, points=256))
        add("dt", "interf", "lower-bound", lambda: ai.tau_star_dt_interference(params, interf))
    return rows


def cmd_optimize(args):
    params, interf = _load(args)
    if args.scenario == "interf" and interf is None:
        interf = InterferenceParams()
    if args.scenario == "noise":
        interf = None
    rows = [r for r in _optimize_rows(params, interf) if args.mode in (None, r[0])]
    lines = ["# " + line for line in format_config(params, interf).splitlines()]
    lines.append("%-4s %-7s %-12s %14s %16s" % ("mode", "scenario", "method", "tau_star", "objective"))
    for r in rows:
        lines.append("%-4s %-7s %-12s %14s %16s" % r)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args):
    trials = args.trials if args.trials is not None else 10**6
    if trials < MIN_VERIFY_TRIALS:
        raise SweepError("verify needs --trials >= %d" % MIN_VERIFY_TRIALS)
    grid = verification.standard_grid()
    if args.grid_size is not None:
        if not 1 <= args.grid_size <= len(grid):
            raise SweepError("--grid-size must be between 1 and %d" % len(grid))
        grid = grid[:args.grid_size]
    rows = verification.run_grid(grid, trials=trials, seed=_seed(args, 2024),
                                 progress=lambda msg: log.info(msg))
    _emit(verification.format_report(rows), args.out)
    return 0 if all(r.passed for r in rows) else 1


def cmd_figure(args):
    curves = FIGURES[args.id]()
    out = Path(args.out or "figure-%s" % args.id)
    out.mkdir(parents=True, exist_ok=True)
    for name, spec in curves:
        spec = replace(spec, seed=_seed(args, 0))
        if args.trials is not None:
            spec = replace(spec, trials=args.trials)
        log.info("curve %s", name)
        run_sweep(spec).write(out / (name + ".csv"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value parameter file")
    common.add_argument("--seed", type=_u64, default=None,
                        help="base RNG seed (default 0; 2024 for verify)")
    common.add_argument("--out", help="output file (directory for 'figure'); default stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="wpcomm",
        description="Throughput of wireless-powered links with a multi-antenna power beacon.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="sweep one parameter and write a CSV curve")
    p.add_argument("--var", required=True, choices=VARIABLES)
    p.add_argument("--range", required=True, type=_range, metavar="LO:HI:STEPS")
    p.add_argument("--mode", choices=("dc", "dt"), default="dc",
                   help="dc: delay-intolerant, dt: delay-tolerant")
    p.add_argument("--scenario", choices=("noise", "interf"), default="noise")
    p.add_argument("--estimator", choices=ESTIMATORS, default="analytic")
    p.add_argument("--tau", type=_tau, default=0.5, help="time split, or 'opt'")
    p.add_argument("--trials", type=_trials, default=10**5)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", parents=[common], help="optimal tau by every available method")
    p.add_argument("--mode", choices=("dc", "dt"), default=None)
    p.add_argument("--scenario", choices=("noise", "interf"), default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", parents=[common], help="analytic vs Monte Carlo on the standard grid")
    p.add_argument("--grid-size", type=int, default=None, help="use the first K grid points")
    p.add_argument("--trials", type=_trials, default=None, help="trials per comparison (default 1e6)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", parents=[common], help="write the CSV curves of a figure preset")
    p.add_argument("id", choices=sorted(FIGURES, key=lambda k: (len(k), k)))
    p.add_argument("--trials", type=_trials, default=None, help="override Monte Carlo trials")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.debug("threads: %d", mc.worker_count())
    try:
        return args.func(args)
    except SweepError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
