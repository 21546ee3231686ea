"""Reference experiments: the attractor-bound tables, sigma anchors, the
autocorrelation run and the teacher-student training experiment, each
returned as a :class:`Check` with the measured values attached."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .activation import DriverConfig, activation, activation_derivative
from .chaos import ChaoticMap, estimate_alpha_bounds, iterate_map, lyapunov_exponent
from .diagnostics import autocorrelation, sigma_sweep, std_dev, through_origin_fit
from .neuron import (
    SpatioTemporalNeuron,
    TrainConfig,
    generate,
    loss_and_gradient,
    mse_loss,
    teacher_target,
    train,
)

# Published attractor bounds, r -> (alpha_min, alpha_max).
LOGISTIC_TABLE = {
    3.5: (0.382, 0.875),
    3.6: (0.333, 0.894),
    3.7: (0.261, 0.923),
    3.8: (0.181, 0.949),
    3.9: (0.123, 0.967),
    4.0: (0.000, 1.000),
}
CUBIC_TABLE = {
    2.3: (0.668, 1.342),
    2.4: (0.585, 1.408),
    2.5: (0.286, 1.520),
    2.6: (-1.605, -0.035),
    2.7: (-1.698, 1.664),
    2.8: (-1.759, 1.405),
    2.9: (-1.884, 1.899),
    3.0: (-1.953, 1.861),
}
CUBIC_SEEDS = (0.1, -0.1, 0.9, -0.9)

TEACHER_WEIGHT = 1.3
TEACHER_BIAS = -0.2
TRAINING_PHI = (-2.7, 3.5)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    values: dict = field(default_factory=dict)
    seconds: float = 0.0
    artifacts: tuple = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "values": self.values,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = time.perf_counter() - t0
        return check
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def logistic_table(x0=0.1, burn_in=1000, n=100_000):
    rows = []
    for r, (pmin, pmax) in LOGISTIC_TABLE.items():
        b = estimate_alpha_bounds(ChaoticMap.logistic(r), x0, burn_in, n)
        rows.append({"r": r, "alpha_min": b.alpha_min, "alpha_max": b.alpha_max,
                     "published_min": pmin, "published_max": pmax})
    return rows


def cubic_table(seeds=CUBIC_SEEDS, burn_in=1000, n=100_000):
    """For each row, the seed whose bounds lie closest (max-abs) to the table."""
    rows = []
    for r, (pmin, pmax) in CUBIC_TABLE.items():
        best = None
        for x0 in seeds:
            b = estimate_alpha_bounds(ChaoticMap.cubic(r), x0, burn_in, n)
            err = max(abs(b.alpha_min - pmin), abs(b.alpha_max - pmax))
            if best is None or err < best["error"]:
                best = {"r": r, "seed": x0, "alpha_min": b.alpha_min,
                        "alpha_max": b.alpha_max, "published_min": pmin,
                        "published_max": pmax, "error": err}
        rows.append(best)
    return rows


def _row_error(row):
    return max(abs(row["alpha_min"] - row["published_min"]), abs(row["alpha_max"] - row["published_max"]))


@_timed
def check_logistic_table(tol=0.02) -> Check:
    rows = logistic_table()
    bad = [row["r"] for row in rows if _row_error(row) > tol]
    return Check("logistic_bounds", not bad,
                 f"rows outside +-{tol}: {bad}" if bad else f"all rows within +-{tol}",
                 {"rows": rows, "failing_r": bad})


@_timed
def check_cubic_table(tol=0.05) -> Check:
    rows = cubic_table()
    bad = [row["r"] for row in rows if row["error"] > tol]
    return Check("cubic_bounds_best_seed", not bad,
                 f"rows with no seed within +-{tol}: {bad}" if bad
                 else f"every row matched by some seed within +-{tol}",
                 {"rows": rows, "failing_r": bad})


@_timed
def check_lyapunov(tol=0.01) -> Check:
    m = ChaoticMap.logistic(4.0)
    lam = lyapunov_exponent(iterate_map(m, 0.1, 1000, 100_000).samples, m)
    ok = abs(lam - math.log(2)) <= tol
    return Check("lyapunov_logistic_r4", ok, f"lambda={lam:.5f}, ln2={math.log(2):.5f}",
                 {"lambda": lam})


def anchor_sigma(phi_min, phi_max, n=100_000):
    cfg = DriverConfig(ChaoticMap.logistic(4.0), phi_min=phi_min, phi_max=phi_max)
    return std_dev(generate(SpatioTemporalNeuron([1.0], 0.0, cfg), 1.0, n))


@_timed
def check_sigma_anchor() -> Check:
    s1 = anchor_sigma(0.9, 1.1)
    s2 = anchor_sigma(0.8, 1.2)
    ok = abs(s1 - 0.013) <= 0.002 and abs(s2 - 0.026) <= 0.004
    return Check("sigma_anchor", ok, f"sigma(0.9,1.1)={s1:.5f}, sigma(0.8,1.2)={s2:.5f}",
                 {"sigma_0.2": s1, "sigma_0.4": s2})


SWEEP_DELTAS = tuple(round(0.1 * k, 1) for k in range(1, 11))


@_timed
def check_sigma_proportionality(rows=None) -> Check:
    rows = rows if rows is not None else sigma_sweep(SWEEP_DELTAS)
    d = np.array([r.delta_phi for r in rows])
    s = np.array([r.sigma for r in rows])
    slope, r2 = through_origin_fit(d, s)
    ratio = s[np.isclose(d, 0.4)][0] / s[np.isclose(d, 0.2)][0]
    ok = r2 > 0.98 and abs(ratio - 2.0) <= 0.15
    return Check("sigma_proportionality", ok,
                 f"R^2={r2:.5f}, slope={slope:.5f}, sigma(0.4)/sigma(0.2)={ratio:.4f}",
                 {"r2": r2, "slope": slope, "ratio": ratio})


@_timed
def check_autocorrelation(output=None, tol=0.05) -> Check:
    if output is None:
        cfg = DriverConfig(ChaoticMap.logistic(4.0))
        output = generate(SpatioTemporalNeuron([1.0], 0.0, cfg), 1.0, 100_000)
    rho = autocorrelation(output, 20)
    worst = float(np.max(np.abs(rho[1:])))
    return Check("autocorrelation_near_zero", worst < tol, f"max |rho(1..20)|={worst:.5f}",
                 {"max_abs_rho": worst, "rho": rho.tolist()})


def _central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / ((x + h) - (x - h))


def activation_gradient_error(n_points=1000, seed=0) -> float:
    """Worst relative error of the analytic dS/dz against central differences.

    Differences are taken on whichever of ``S(z, phi)`` or ``1 - S = S(z, -phi)``
    is the small tail, so saturation does not swamp the difference quotient.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for z, phi in rng.uniform(-10, 10, size=(n_points, 2)):
        # step fixed in units of phi*z: truncation ~1e-9, rounding ~1e-12
        h = 1e-4 / abs(phi)
        if phi * z > 0:
            fd = -_central_difference(lambda v: activation(v, -phi), z, h)
        else:
            fd = _central_difference(lambda v: activation(v, phi), z, h)
        exact = activation_derivative(z, phi)
        worst = max(worst, abs(exact - fd) / abs(fd))
    return worst


def training_gradient_error(n_problems=50, seed=1) -> float:
    """Worst relative error of the trainer's gradient against central
    differences of ``mse_loss(forward(...))`` on small random problems."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_problems):
        dim = int(rng.integers(1, 4))
        steps = int(rng.integers(20, 80))
        lo = float(rng.uniform(-3, 1))
        cfg = DriverConfig(ChaoticMap.logistic(float(rng.uniform(3.6, 4.0))),
                           alpha0=float(rng.uniform(0.05, 0.95)),
                           phi_min=lo, phi_max=lo + float(rng.uniform(0.1, 4)))
        neuron = SpatioTemporalNeuron(rng.normal(size=dim), float(rng.normal()), cfg, burn_in=10)
        x = rng.normal(size=(steps, dim))
        y = rng.uniform(0.05, 0.95, size=steps)
        phi = neuron.phi_sequence(steps)
        _, gw, gb = loss_and_gradient(neuron, x, y, phi)
        analytic = np.append(gw, gb)

        def loss_at(params):
            trial = SpatioTemporalNeuron(params[:-1], params[-1], cfg, burn_in=10)
            return mse_loss(activation(x @ trial.weights + trial.bias, trial.phi_sequence(steps)), y)

        p0 = np.append(neuron.weights, neuron.bias)
        for j in range(len(p0)):
            h = 1e-6
            up, dn = p0.copy(), p0.copy()
            up[j] += h
            dn[j] -= h
            fd = (loss_at(up) - loss_at(dn)) / (up[j] - dn[j])
            worst = max(worst, abs(analytic[j] - fd) / max(abs(fd), 1e-8))
    return worst


@_timed
def check_gradients() -> Check:
    a = activation_gradient_error()
    t = training_gradient_error()
    return Check("gradient_checks", a < 1e-7 and t < 1e-5,
                 f"activation rel err={a:.2e} (<1e-7), training rel err={t:.2e} (<1e-5)",
                 {"activation_rel_err": a, "training_rel_err": t})


def teacher_student(n=2000, config: TrainConfig = TrainConfig()):
    """Train a zero-initialised student against a teacher sharing its driver.

    Returns ``(teacher, student, report, target, output)``.
    """
    cfg = DriverConfig(ChaoticMap.logistic(4.0), alpha0=0.1,
                       phi_min=TRAINING_PHI[0], phi_max=TRAINING_PHI[1])
    teacher = SpatioTemporalNeuron([TEACHER_WEIGHT], TEACHER_BIAS, cfg)
    target = teacher_target(teacher, 1.0, n)
    student, report = train(SpatioTemporalNeuron([0.0], 0.0, cfg), np.ones(n), target, config)
    return teacher, student, report, target, generate(student, 1.0, n)


@_timed
def check_training() -> Check:
    teacher, student, report, target, output = teacher_student()
    m = teacher.driver.map
    lam_t = lyapunov_exponent(target, m)
    lam_o = lyapunov_exponent(output, m)
    u_err = abs((student.weights[0] + student.bias) - (TEACHER_WEIGHT + TEACHER_BIAS))
    ok = report.final_mse < 1e-6 and u_err < 1e-3 and abs(lam_t - lam_o) <= 0.1
    return Check("teacher_student_training", ok,
                 f"mse={report.final_mse:.2e} after {report.epochs_run} epochs, "
                 f"|u-u*|={u_err:.2e}, lambda target={lam_t:.4f} output={lam_o:.4f}",
                 {"final_mse": report.final_mse, "epochs": report.epochs_run,
                  "preactivation_error": u_err, "lambda_target": lam_t,
                  "lambda_output": lam_o},
                 artifacts=(student, report, target, output))


def all_checks() -> list[Check]:
    return [
        check_logistic_table(),
        check_cubic_table(),
        check_lyapunov(),
        check_sigma_anchor(),
        check_sigma_proportionality(),
        check_autocorrelation(),
        check_gradients(),
        check_training(),
    ]
