"""Series statistics: standard deviation, autocorrelation, sigma sweeps and
combined reports."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .activation import DriverConfig
from .chaos import ChaoticMap, lyapunov_exponent
from .errors import DiagnosticsError, DomainError, ShapeError, ZeroVarianceError
from .neuron import SpatioTemporalNeuron, generate

DEFAULT_MAX_LAG = 50
MIN_VARIANCE = 1e-24


@dataclass
class DiagnosticsReport:
    lyapunov: float | None
    std_dev: float
    mean: float
    autocorrelation: np.ndarray
    n_samples: int

    def to_dict(self) -> dict:
        return {
            "lyapunov": self.lyapunov,
            "std_dev": self.std_dev,
            "mean": self.mean,
            "autocorrelation": [float(v) for v in self.autocorrelation],
            "n_samples": self.n_samples,
        }


@dataclass(frozen=True)
class SigmaSweepRow:
    delta_phi: float
    phi_center: float
    sigma: float


def _series(series) -> np.ndarray:
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ShapeError(f"expected a 1-D series, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise DomainError("series contains non-finite samples")
    return x


def std_dev(series) -> float:
    """Population standard deviation (divides by n), two-pass."""
    x = _series(series)
    if len(x) < 2:
        raise ShapeError(f"std_dev needs at least 2 samples, got {len(x)}")
    d = x - x.mean()
    return float(np.sqrt(np.dot(d, d) / len(x)))


def autocorrelation(series, max_lag: int = DEFAULT_MAX_LAG) -> np.ndarray:
    """Biased, lag-0-normalised autocorrelation for lags ``0..max_lag``.

    ``rho[k] = sum_{t<n-k} d_t d_{t+k} / sum_t d_t^2`` with ``d = x - mean(x)``.
    ``rho[0]`` is exactly 1 and ``|rho[k]| <= 1`` by Cauchy-Schwarz.
    """
    x = _series(series)
    max_lag = int(max_lag)
    n = len(x)
    if max_lag < 1:
        raise DomainError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= n:
        raise ShapeError(f"max_lag={max_lag} must be smaller than the series length {n}")
    d = x - x.mean()
    denom = np.dot(d, d)
    if denom / n <= MIN_VARIANCE:
        raise ZeroVarianceError("series is (near-)constant; autocorrelation undefined")
    rho = np.empty(max_lag + 1)
    rho[0] = 1.0
    for k in range(1, max_lag + 1):
        rho[k] = np.dot(d[: n - k], d[k:]) / denom
    return np.clip(rho, -1.0, 1.0)


def sigma_sweep(
    deltas,
    phi_center: float = 1.0,
    driver: DriverConfig | None = None,
    flat_value: float = 1.0,
    n: int = 100_000,
) -> list[SigmaSweepRow]:
    """Output sigma of a ``w=1, b=0`` neuron for each phi range width.

    For each ``delta`` the driver template gets phi bounds
    ``phi_center -+ delta / 2``; the rest of the template (map, alpha0,
    attractor bounds) is kept. Rows come back sorted by ``delta``.
    """
    if driver is None:
        driver = DriverConfig(ChaoticMap.logistic(4.0))
    if int(n) < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    rows = []
    for delta in sorted(float(d) for d in deltas):
        if not delta > 0:
            raise DomainError(f"sweep deltas must be positive, got {delta}")
        cfg = driver.replace(phi_min=phi_center - delta / 2, phi_max=phi_center + delta / 2)
        out = generate(SpatioTemporalNeuron([1.0], 0.0, cfg), flat_value, n)
        rows.append(SigmaSweepRow(delta, float(phi_center), std_dev(out)))
    return rows


def through_origin_fit(x, y) -> tuple[float, float]:
    """Least-squares slope of ``y = c x`` and its (uncentred) R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope = np.dot(x, y) / np.dot(x, x)
    resid = y - slope * x
    return float(slope), float(1.0 - np.dot(resid, resid) / np.dot(y, y))


def diagnose(series, m: ChaoticMap | None = None,
             max_lag: int = DEFAULT_MAX_LAG) -> DiagnosticsReport:
    """Assemble sigma, mean, autocorrelation and (if ``m`` is given) lambda.

    Every component is attempted; if any fail, one :class:`DiagnosticsError`
    carrying all of the failures is raised.
    """
    errors: list[Exception] = []
    x = np.asarray(series, dtype=float)

    def attempt(fn, *args):
        try:
            return fn(*args)
        except Exception as exc:  # collected and re-raised together below
            errors.append(exc)
            return None

    sd = attempt(std_dev, x)
    rho = attempt(autocorrelation, x, max_lag)
    lam = attempt(lyapunov_exponent, x, m) if m is not None else None
    if errors:
        raise DiagnosticsError(errors)
    return DiagnosticsReport(
        lyapunov=lam, std_dev=sd, mean=float(x.mean()), autocorrelation=rho,
        n_samples=int(x.size),
    )
