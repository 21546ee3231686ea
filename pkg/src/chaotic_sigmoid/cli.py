"""Command-line front end.

Exit codes: 0 success, 2 invalid flags/files, 3 numerical failure,
4 training divergence. ``--config file.json`` supplies flag defaults
(keys are flag names with dashes or underscores); explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .activation import DriverConfig
from .chaos import (
    DEFAULT_BURN_IN,
    DEFAULT_N,
    DEFAULT_X0,
    R_RANGE,
    ChaoticMap,
    MapKind,
    bifurcation_scan,
    estimate_alpha_bounds,
    lyapunov_exponent,
)
from .diagnostics import DEFAULT_MAX_LAG, diagnose, sigma_sweep
from .errors import ChaoticSigmoidError, DivergenceError, DomainError, ShapeError
from .neuron import SpatioTemporalNeuron, TrainConfig, generate, train
from . import reproduction

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_DIVERGED = 0, 2, 3, 4


class UsageError(Exception):
    """Bad flag value or unreadable input file."""


def _map(kind: str, r: float, flag: str) -> ChaoticMap:
    kind = MapKind(kind)
    r_max = R_RANGE[kind]
    if not (math.isfinite(r) and 0.0 < r <= r_max):
        raise UsageError(f"{flag}={r:g} is outside the {kind.value} map range 0 < r <= {r_max:g}")
    return ChaoticMap(kind, r)


def _positive_int(value: int, flag: str, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{flag} must be >= {minimum}, got {value}")
    return value


def _add_map_flags(p, r_default=4.0, with_r=True):
    p.add_argument("--map", choices=[k.value for k in MapKind], default="logistic",
                   help="chaotic map driving phi")
    if with_r:
        p.add_argument("--r", type=float, default=r_default, help="map growth parameter")


def _add_driver_flags(p, phi=(0.9, 1.1)):
    _add_map_flags(p)
    p.add_argument("--alpha0", type=float, default=DEFAULT_X0, help="initial map state")
    p.add_argument("--alpha-min", type=float, default=0.0, help="attractor lower bound")
    p.add_argument("--alpha-max", type=float, default=1.0, help="attractor upper bound")
    p.add_argument("--phi-min", type=float, default=phi[0], help="lower phi bound")
    p.add_argument("--phi-max", type=float, default=phi[1], help="upper phi bound")


def _driver(args) -> DriverConfig:
    m = _map(args.map, args.r, "--r")
    try:
        return DriverConfig(m, args.alpha0, args.alpha_min, args.alpha_max,
                            args.phi_min, args.phi_max)
    except DomainError as exc:
        raise UsageError(f"invalid driver flags: {exc}") from exc


def _read_target(path) -> np.ndarray:
    try:
        return io.read_series_csv(path)
    except OSError as exc:
        raise UsageError(f"--target: cannot read {path}: {exc.strerror}") from exc
    except DomainError as exc:
        raise UsageError(f"--target: {exc}") from exc


def _load_model(path) -> SpatioTemporalNeuron:
    try:
        return SpatioTemporalNeuron.from_dict(io.read_json(path))
    except OSError as exc:
        raise UsageError(f"--model: cannot read {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"--model: invalid model file {path}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------

def cmd_bifurcation(args) -> int:
    _map(args.map, args.r_min, "--r-min")
    _map(args.map, args.r_max, "--r-max")
    if not args.r_min < args.r_max:
        raise UsageError("--r-min must be smaller than --r-max")
    _positive_int(args.r_steps, "--r-steps", 2)
    _positive_int(args.samples, "--samples")
    table = bifurcation_scan(args.map, args.r_min, args.r_max, args.r_steps,
                             args.x0, args.burn_in, args.samples)
    io.write_scan_csv(args.out, table.r, table.x)
    print(f"wrote {len(table)} rows to {args.out}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.table:
        kind = args.table
        rs = list((reproduction.LOGISTIC_TABLE if kind == "logistic"
                   else reproduction.CUBIC_TABLE))
    else:
        kind = args.map
        rs = args.r or [4.0]
    maps = [_map(kind, r, "--r") for r in rs]
    _positive_int(args.n, "--n")
    print("r, alpha_min, alpha_max")
    for m in maps:
        b = estimate_alpha_bounds(m, args.x0, args.burn_in, args.n)
        print(f"{m.r:g}, {b.alpha_min:.3f}, {b.alpha_max:.3f}")
    return EXIT_OK


def _neuron_from_args(args) -> SpatioTemporalNeuron:
    if args.model:
        return _load_model(args.model)
    return SpatioTemporalNeuron([args.weight], args.bias, _driver(args))


def cmd_generate(args) -> int:
    neuron = _neuron_from_args(args)
    _positive_int(args.n, "--n")
    out = generate(neuron, args.flat, args.n)
    io.write_series_csv(args.out, out)
    report_path = args.report or str(Path(args.out).with_suffix(".report.json"))
    if args.n > args.max_lag:
        report = diagnose(out, neuron.driver.map, args.max_lag).to_dict()
    else:
        report = {"lyapunov": None, "std_dev": None, "mean": float(out.mean()),
                  "autocorrelation": [], "n_samples": int(out.size)}
    io.write_json(report_path, report)
    print(f"wrote {len(out)} samples to {args.out}; report {report_path}")
    if report["std_dev"] is not None:
        print(f"std_dev={report['std_dev']:.6f} mean={report['mean']:.6f}")
    return EXIT_OK


def cmd_train(args) -> int:
    target = _read_target(args.target)
    neuron = _neuron_from_args(args)
    try:
        config = TrainConfig(args.lr, args.epochs, args.tol, not args.no_train_bias)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    inputs = np.full((len(target), neuron.n_inputs), args.flat)
    model, report = train(neuron, inputs, target, config)
    io.write_json(args.out_model, model.to_dict())
    io.write_series_csv(args.loss_out, report.loss_curve, "value")
    output = generate(model, args.flat, len(target))
    m = model.driver.map
    print(f"initial MSE {report.initial_mse:.6e}")
    print(f"final MSE {report.final_mse:.6e} after {report.epochs_run} epochs")
    print(f"weights={model.weights.tolist()} bias={model.bias!r}")
    # on flat input only the pre-activation w . x + b is identifiable
    print(f"pre-activation w.x+b = {float(model.weights.sum() * args.flat + model.bias):.6f}")
    try:
        lam_t = lyapunov_exponent(target, m)
        lam_o = lyapunov_exponent(output, m)
        print(f"lambda target={lam_t:.4f} output={lam_o:.4f} "
              f"|diff|={abs(lam_t - lam_o):.4f} ({m.kind.value} r={m.r:g})")
    except ChaoticSigmoidError as exc:
        print(f"lambda comparison unavailable: {exc}")
    return EXIT_OK


def cmd_diagnose(args) -> int:
    try:
        series = io.read_series_csv(args.input)
    except OSError as exc:
        raise UsageError(f"--input: cannot read {args.input}: {exc.strerror}") from exc
    except DomainError as exc:
        raise UsageError(f"--input: {exc}") from exc
    m = _map(args.map, args.r, "--r") if args.r is not None else None
    report = diagnose(series, m, args.max_lag).to_dict()
    if args.out:
        io.write_json(args.out, report)
    print(json.dumps({k: v for k, v in report.items() if k != "autocorrelation"}))
    return EXIT_OK


def cmd_sweep_sigma(args) -> int:
    if any(d <= 0 for d in args.deltas):
        raise UsageError("--deltas must all be positive")
    _positive_int(args.n, "--n", 1000)
    rows = sigma_sweep(args.deltas, args.phi_center, _driver(args), args.flat, args.n)
    io.write_sweep_csv(args.out, rows)
    for row in rows:
        print(f"{row.delta_phi:g}, {row.sigma:.6f}")
    return EXIT_OK


def _prepare_outdir(out: Path, force: bool) -> None:
    if out.exists():
        if not out.is_dir():
            raise UsageError(f"--out {out} exists and is not a directory")
        if any(out.iterdir()) and not force:
            raise UsageError(f"--out {out} is not empty; pass --force to overwrite")
    else:
        try:
            out.mkdir(parents=True)
        except OSError as exc:
            raise UsageError(f"--out: cannot create {out}: {exc.strerror}") from exc
    if not os.access(out, os.W_OK | os.X_OK):
        raise UsageError(f"--out {out} is not writable")


def cmd_reproduce_paper(args) -> int:
    out = Path(args.out)
    _prepare_outdir(out, args.force)
    checks = []

    def run(step):
        try:
            checks.append(step())
        except Exception as exc:  # keep going; the failure is reported in the summary
            checks.append(reproduction.Check(getattr(step, "__name__", "step"), False,
                                             f"{type(exc).__name__}: {exc}"))

    def tables():
        c1 = reproduction.check_logistic_table()
        rows = c1.values["rows"]
        io.atomic_write_text(out / "bounds_logistic.csv", io.csv_text(
            ("r", "alpha_min", "alpha_max", "published_min", "published_max"),
            [[row[k] for row in rows] for k in ("r", "alpha_min", "alpha_max", "published_min", "published_max")]))
        return c1

    def cubic():
        c2 = reproduction.check_cubic_table()
        rows = c2.values["rows"]
        keys = ("r", "seed", "alpha_min", "alpha_max", "published_min", "published_max")
        io.atomic_write_text(out / "bounds_cubic.csv", io.csv_text(
            keys, [[row[k] for row in rows] for k in keys]))
        return c2

    def bifurcations():
        t = bifurcation_scan("logistic", 2.5, 4.0, 601, DEFAULT_X0, DEFAULT_BURN_IN, 200)
        io.write_scan_csv(out / "bifurcation_logistic.csv", t.r, t.x)
        t = bifurcation_scan("cubic", 2.3, 3.0, 71, DEFAULT_X0, DEFAULT_BURN_IN, 200)
        io.write_scan_csv(out / "bifurcation_cubic.csv", t.r, t.x)
        col = t.column(2.9)
        ok = abs(col.min() + 1.884) <= 0.05 and abs(col.max() - 1.899) <= 0.05
        return reproduction.Check("cubic_bifurcation_r2.9_extrema", ok,
                                  f"r=2.9 column range [{col.min():.4f}, {col.max():.4f}]",
                                  {"min": float(col.min()), "max": float(col.max())})

    def sweep():
        rows = sigma_sweep(reproduction.SWEEP_DELTAS)
        io.write_sweep_csv(out / "sigma_sweep.csv", rows)
        return reproduction.check_sigma_proportionality(rows)

    def autocorr():
        cfg = DriverConfig(ChaoticMap.logistic(4.0))
        output = generate(SpatioTemporalNeuron([1.0], 0.0, cfg), 1.0, DEFAULT_N)
        io.write_series_csv(out / "neuron_output.csv", output)
        io.write_json(out / "neuron_output.report.json",
                      diagnose(output, cfg.map, DEFAULT_MAX_LAG).to_dict())
        return reproduction.check_autocorrelation(output)

    def training():
        c = reproduction.check_training()
        student, report, target, output = c.artifacts
        io.write_series_csv(out / "training_target.csv", target)
        io.write_series_csv(out / "training_output.csv", output)
        io.write_series_csv(out / "training_loss.csv", report.loss_curve)
        io.write_json(out / "trained_model.json", student.to_dict())
        return c

    for step in (tables, cubic, bifurcations, reproduction.check_lyapunov,
                 reproduction.check_sigma_anchor, sweep, autocorr,
                 reproduction.check_gradients, training):
        run(step)

    summary = {
        "all_pass": all(c.passed for c in checks),
        "checks": [c.to_dict() for c in checks],
        "notes": [
            "training target: teacher neuron (w=1.3, b=-0.2, phi in [-2.7, 3.5], "
            "logistic r=4, alpha0=0.1, flat input 1.0) stands in for the unpublished chaotic series",
        ],
    }
    io.write_json(out / "summary.json", summary)
    for c in checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail} ({c.seconds:.2f} s)")
    return EXIT_OK if summary["all_pass"] else 1


# -- parser --------------------------------------------------------------------

class _DefaultsFormatter(argparse.HelpFormatter):
    """Append the default to every option that has one, with or without help text."""

    def _get_help_string(self, action):
        text = action.help or ""
        hidden = action.default is None or action.default is False or action.default == argparse.SUPPRESS
        if action.option_strings and not hidden and "%(default)" not in text:
            text += " (default: %(default)s)"
        return text.strip()


def build_parser() -> argparse.ArgumentParser:
    fmt = _DefaultsFormatter
    parser = argparse.ArgumentParser(
        prog="chaotic-sigmoid",
        description="Chaotic-map driven sigmoid neuron: experiments and diagnostics.",
        formatter_class=fmt,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, formatter_class=fmt)
        p.add_argument("--config", help="JSON file of flag defaults (flags win)")
        p.set_defaults(func=func)
        return p

    p = add("bifurcation", cmd_bifurcation, "bifurcation diagram samples as r,x CSV")
    _add_map_flags(p, with_r=False)
    p.add_argument("--r-min", type=float, default=2.5, help="first r of the grid")
    p.add_argument("--r-max", type=float, default=4.0, help="last r of the grid")
    p.add_argument("--r-steps", type=int, default=600, help="grid intervals (r-steps + 1 values)")
    p.add_argument("--samples", type=int, default=200, help="samples kept per r")
    p.add_argument("--x0", type=float, default=DEFAULT_X0, help="initial condition")
    p.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN, help="discarded transient")
    p.add_argument("--out", default="bifurcation.csv", help="output CSV")

    p = add("bounds", cmd_bounds, "empirical attractor bounds per r")
    _add_map_flags(p, with_r=False)
    p.add_argument("--r", type=float, nargs="+", default=None, help="growth parameters; 4.0 when neither --r nor --table is given")
    p.add_argument("--table", choices=["logistic", "cubic"], default=None,
                   help="use every r of the published table for this map")
    p.add_argument("--x0", type=float, default=DEFAULT_X0, help="initial condition")
    p.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN, help="discarded transient")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="number of samples")

    p = add("generate", cmd_generate, "neuron output on flat input, plus a diagnostics report")
    _add_driver_flags(p)
    p.add_argument("--model", default=None, help="model JSON (overrides weight/bias/driver flags)")
    p.add_argument("--weight", type=float, default=1.0, help="input weight")
    p.add_argument("--bias", type=float, default=0.0, help="bias")
    p.add_argument("--flat", type=float, default=1.0, help="flat input value")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="number of samples")
    p.add_argument("--max-lag", type=int, default=DEFAULT_MAX_LAG, help="largest autocorrelation lag")
    p.add_argument("--out", default="output.csv", help="output series CSV (t,value)")
    p.add_argument("--report", default=None, help="report path (default <out>.report.json)")

    p = add("train", cmd_train, "fit a neuron to a target series by gradient descent")
    _add_driver_flags(p, phi=(-2.7, 3.5))
    p.add_argument("--target", required=True, help="target series CSV (t,value)")
    p.add_argument("--model", default=None, help="initial model JSON")
    p.add_argument("--weight", type=float, default=0.0, help="initial weight")
    p.add_argument("--bias", type=float, default=0.0, help="initial bias")
    p.add_argument("--flat", type=float, default=1.0, help="flat input value")
    p.add_argument("--lr", type=float, default=TrainConfig.learning_rate, help="learning rate")
    p.add_argument("--epochs", type=int, default=TrainConfig.max_epochs, help="maximum epochs")
    p.add_argument("--tol", type=float, default=TrainConfig.mse_tolerance, help="stop once MSE <= tol")
    p.add_argument("--no-train-bias", action="store_true", help="keep the bias fixed")
    p.add_argument("--out-model", default="model.json", help="trained model JSON")
    p.add_argument("--loss-out", default="loss.csv", help="loss after each update, as t,value CSV")

    p = add("diagnose", cmd_diagnose, "sigma, autocorrelation and lambda of a series CSV")
    _add_map_flags(p, with_r=False)
    p.add_argument("--input", required=True, help="series CSV (t,value)")
    p.add_argument("--r", type=float, default=None, help="map r for lambda (omit to skip)")
    p.add_argument("--max-lag", type=int, default=DEFAULT_MAX_LAG, help="largest autocorrelation lag")
    p.add_argument("--out", default=None, help="report JSON path")

    p = add("sweep-sigma", cmd_sweep_sigma, "output sigma versus phi range width")
    _add_driver_flags(p)
    p.add_argument("--deltas", type=float, nargs="+", default=list(reproduction.SWEEP_DELTAS),
                   help="phi range widths")
    p.add_argument("--phi-center", type=float, default=1.0, help="midpoint of every phi range")
    p.add_argument("--flat", type=float, default=1.0, help="flat input value")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="number of samples")
    p.add_argument("--out", default="sigma_sweep.csv", help="output CSV (delta_phi,sigma)")

    p = add("reproduce-paper", cmd_reproduce_paper,
            "regenerate every table and figure dataset and check them")
    p.add_argument("--out", default="reproduction", help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite a non-empty output dir")
    return parser


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        return action.choices[command]


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = _subparser(parser, args.command)
        try:
            cfg = io.read_json(args.config)
        except (OSError, ValueError) as exc:
            sub.error(f"--config: cannot load {args.config}: {exc}")
        if not isinstance(cfg, dict):
            sub.error("--config must hold a JSON object")
        known = {a.dest for a in sub._actions} - {"help", "config", "func"}
        defaults = {}
        for key, value in cfg.items():
            dest = key.replace("-", "_")
            if dest not in known:
                sub.error(f"--config: unknown field {key!r}")
            defaults[dest] = value
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ShapeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED if exc.epoch is not None else EXIT_NUMERIC
    except (ChaoticSigmoidError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
