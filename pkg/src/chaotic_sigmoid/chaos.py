"""One-dimensional chaotic maps: iteration, attractor bounds, bifurcation
scans and the Lyapunov exponent of a sampled orbit.

Two maps are supported::

    logistic   x -> r x (1 - x)      0 < r <= 4, x in [0, 1]
    cubic      x -> r x - x^3        0 < r <= 3, x real

All functions are pure and deterministic. Iteration is done with plain
IEEE double arithmetic in a fixed operation order, so the scalar path
(:func:`iterate_map`) and the vectorised path (:func:`bifurcation_scan`)
produce bit-identical iterates for the same ``(r, x0)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, SingularityError

DEFAULT_X0 = 0.1
DEFAULT_BURN_IN = 1000
DEFAULT_N = 100_000
DIVERGENCE_LIMIT = 1e6
SINGULAR_DERIVATIVE = 1e-300


class MapKind(str, enum.Enum):
    LOGISTIC = "logistic"
    CUBIC = "cubic"


R_RANGE = {MapKind.LOGISTIC: 4.0, MapKind.CUBIC: 3.0}


@dataclass(frozen=True)
class ChaoticMap:
    """An iterated map ``f_r`` with its analytic derivative."""

    kind: MapKind
    r: float

    def __post_init__(self):
        kind = MapKind(self.kind)
        object.__setattr__(self, "kind", kind)
        r = float(self.r)
        object.__setattr__(self, "r", r)
        r_max = R_RANGE[kind]
        if not (math.isfinite(r) and 0.0 < r <= r_max):
            raise DomainError(f"{kind.value} map requires 0 < r <= {r_max:g}, got r={r!r}")

    @classmethod
    def logistic(cls, r: float) -> "ChaoticMap":
        return cls(MapKind.LOGISTIC, r)

    @classmethod
    def cubic(cls, r: float) -> "ChaoticMap":
        return cls(MapKind.CUBIC, r)

    def step(self, x):
        # Written so that float and ndarray inputs round identically.
        if self.kind is MapKind.LOGISTIC:
            return self.r * x * (1.0 - x)
        return self.r * x - x * x * x

    def derivative(self, x):
        if self.kind is MapKind.LOGISTIC:
            return self.r * (1.0 - 2.0 * x)
        return self.r - 3.0 * x * x

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "r": self.r}

    @classmethod
    def from_dict(cls, d: dict) -> "ChaoticMap":
        unknown = set(d) - {"kind", "r"}
        if unknown:
            raise DomainError(f"unknown map fields: {sorted(unknown)}")
        return cls(MapKind(d["kind"]), float(d["r"]))


@dataclass(frozen=True)
class Orbit:
    x0: float
    burn_in: int
    samples: np.ndarray


@dataclass(frozen=True)
class AttractorBounds:
    alpha_min: float
    alpha_max: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha_min) and math.isfinite(self.alpha_max)):
            raise DomainError("attractor bounds must be finite")
        if self.alpha_min > self.alpha_max:
            raise DomainError(
                f"alpha_min={self.alpha_min} exceeds alpha_max={self.alpha_max}"
            )


@dataclass(frozen=True)
class BifurcationTable:
    """Rows ordered by r, ``samples_per_r`` consecutive rows per grid point."""

    r: np.ndarray
    x: np.ndarray

    def __len__(self):
        return len(self.r)

    def column(self, r_value: float) -> np.ndarray:
        """Samples belonging to the grid point closest to ``r_value``."""
        grid = np.unique(self.r)
        nearest = grid[np.argmin(np.abs(grid - r_value))]
        return self.x[self.r == nearest]


def _check_x(m: ChaoticMap, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"state must be finite, got {x!r}")
    if m.kind is MapKind.LOGISTIC and not 0.0 <= x <= 1.0:
        raise DomainError(f"logistic map state must lie in [0, 1], got {x!r}")
    return x


def map_step(m: ChaoticMap, x: float) -> float:
    return m.step(_check_x(m, x))


def map_derivative(m: ChaoticMap, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"state must be finite, got {x!r}")
    return m.derivative(x)


def iterate_map(
    m: ChaoticMap,
    x0: float = DEFAULT_X0,
    burn_in: int = DEFAULT_BURN_IN,
    n: int = DEFAULT_N,
) -> Orbit:
    """Iterate ``m`` from ``x0``, drop ``burn_in`` iterates, keep the next ``n``.

    The first retained sample is the state after ``burn_in`` applications of
    the map (``x0`` itself when ``burn_in == 0``).

    Raises
    ------
    DomainError
        ``x0`` invalid for the map, or ``n < 1`` / ``burn_in < 0``.
    DivergenceError
        An iterate exceeded ``DIVERGENCE_LIMIT`` in magnitude.
    """
    x = _check_x(m, x0)
    n = int(n)
    burn_in = int(burn_in)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if burn_in < 0:
        raise DomainError(f"burn_in must be >= 0, got {burn_in}")

    step = m.step
    for i in range(burn_in):
        x = step(x)
        if not abs(x) <= DIVERGENCE_LIMIT:
            raise DivergenceError(
                f"{m.kind.value} map with r={m.r} diverged at transient step {i + 1}", r=m.r
            )
    out = np.empty(n)
    for i in range(n):
        if not abs(x) <= DIVERGENCE_LIMIT:
            raise DivergenceError(
                f"{m.kind.value} map with r={m.r} diverged at sample {i}", r=m.r
            )
        out[i] = x
        x = step(x)
    return Orbit(x0=float(x0), burn_in=burn_in, samples=out)


def estimate_alpha_bounds(
    m: ChaoticMap,
    x0: float = DEFAULT_X0,
    burn_in: int = DEFAULT_BURN_IN,
    n: int = DEFAULT_N,
) -> AttractorBounds:
    """Empirical (min, max) of the post-transient orbit."""
    s = iterate_map(m, x0, burn_in, n).samples
    return AttractorBounds(float(s.min()), float(s.max()))


def bifurcation_scan(
    kind: MapKind | str,
    r_min: float,
    r_max: float,
    r_steps: int,
    x0: float = DEFAULT_X0,
    burn_in: int = DEFAULT_BURN_IN,
    samples_per_r: int = 200,
) -> BifurcationTable:
    """Attractor samples over a uniform grid of growth parameters.

    All grid points are iterated together as one array; each element follows
    exactly the arithmetic of :func:`iterate_map`.
    """
    kind = MapKind(kind)
    r_steps = int(r_steps)
    samples_per_r = int(samples_per_r)
    if r_steps < 2:
        raise DomainError(f"r_steps must be >= 2, got {r_steps}")
    if samples_per_r < 1:
        raise DomainError(f"samples_per_r must be >= 1, got {samples_per_r}")
    if not r_min < r_max:
        raise DomainError(f"need r_min < r_max, got {r_min} >= {r_max}")
    # Validates both ends of the grid (and x0) before any work.
    ChaoticMap(kind, r_min)
    m_hi = ChaoticMap(kind, r_max)
    _check_x(m_hi, x0)

    grid = np.linspace(float(r_min), float(r_max), r_steps)
    m = _VectorMap(kind, grid)
    x = np.full(r_steps, float(x0))
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(int(burn_in)):
            x = m.step(x)
            _guard(x, grid)
        out = np.empty((r_steps, samples_per_r))
        for j in range(samples_per_r):
            _guard(x, grid)
            out[:, j] = x
            x = m.step(x)
    return BifurcationTable(r=np.repeat(grid, samples_per_r), x=out.ravel())


class _VectorMap:
    def __init__(self, kind: MapKind, r: np.ndarray):
        self.kind = kind
        self.r = r

    def step(self, x):
        if self.kind is MapKind.LOGISTIC:
            return self.r * x * (1.0 - x)
        return self.r * x - x * x * x


def _guard(x: np.ndarray, grid: np.ndarray) -> None:
    bad = ~(np.abs(x) <= DIVERGENCE_LIMIT)
    if bad.any():
        r = float(grid[np.argmax(bad)])
        raise DivergenceError(f"orbit diverged at r={r}", r=r)


def lyapunov_exponent(samples, m: ChaoticMap) -> float:
    """Mean of ``ln|f'(x_i)|`` over the given samples.

    Raises :class:`SingularityError` naming the first index whose derivative
    magnitude is below ``1e-300``.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DomainError("lyapunov_exponent needs a non-empty 1-D series")
    if not np.isfinite(x).all():
        raise DomainError("series contains non-finite samples")
    d = np.abs(m.derivative(x))
    small = d < SINGULAR_DERIVATIVE
    if small.any():
        i = int(np.argmax(small))
        raise SingularityError(
            f"f'(x) vanishes at index {i} (x={x[i]!r}); log|f'| undefined", index=i
        )
    return float(np.mean(np.log(d)))
