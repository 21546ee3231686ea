"""The spatio-temporal sigmoid and the chaotic driver behind its steepness.

At every time step the steepness ``phi`` of a logistic sigmoid is re-drawn
from a chaotic orbit ``alpha(t)``::

    phi(t) = phi_min + (alpha(t) - alpha_min) / (alpha_max - alpha_min) * (phi_max - phi_min)
    S(z, t) = 1 / (1 + exp(-phi(t) z))

A negative ``phi_min`` is allowed; the sigmoid then flips orientation on the
steps where ``phi(t) < 0``.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass

import numpy as np

from .chaos import DEFAULT_BURN_IN, DEFAULT_X0, AttractorBounds, ChaoticMap, MapKind
from .errors import DegenerateBoundsError, DivergenceError, DomainError

MIN_ALPHA_SPAN = 1e-12


@dataclass(frozen=True)
class PhiBounds:
    phi_min: float
    phi_max: float

    def __post_init__(self):
        if not (math.isfinite(self.phi_min) and math.isfinite(self.phi_max)):
            raise DomainError("phi bounds must be finite")
        if self.phi_min > self.phi_max:
            raise DomainError(f"phi_min={self.phi_min} exceeds phi_max={self.phi_max}")


@dataclass(frozen=True)
class TemporalAffine:
    """``phi = phi0 + k * alpha``."""

    phi0: float
    k: float

    def __call__(self, alpha):
        return self.phi0 + self.k * alpha


def _as_output(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _span(bounds: AttractorBounds) -> float:
    span = bounds.alpha_max - bounds.alpha_min
    if span < MIN_ALPHA_SPAN:
        raise DegenerateBoundsError(
            f"alpha_max - alpha_min = {span!r} is below {MIN_ALPHA_SPAN}"
        )
    return span


def normalize_phi(alpha, bounds: AttractorBounds, phi: PhiBounds):
    """Map ``alpha`` linearly from the attractor range onto ``[phi_min, phi_max]``.

    Values of ``alpha`` outside the attractor bounds are clamped first, and
    the result is clipped so float rounding can never leave the phi range.
    """
    span = _span(bounds)
    a = np.clip(np.asarray(alpha, dtype=float), bounds.alpha_min, bounds.alpha_max)
    out = phi.phi_min + (a - bounds.alpha_min) / span * (phi.phi_max - phi.phi_min)
    return _as_output(np.clip(out, phi.phi_min, phi.phi_max))


def to_affine(bounds: AttractorBounds, phi: PhiBounds) -> TemporalAffine:
    k = (phi.phi_max - phi.phi_min) / _span(bounds)
    return TemporalAffine(phi0=phi.phi_min - k * bounds.alpha_min, k=k)


def activation(z, phi):
    """Bounded sigmoid ``1 / (1 + exp(-phi z))``.

    Evaluated through ``exp(-|phi z|)`` so no argument overflows; far in the
    tails the result saturates to exactly 0.0 or 1.0. Returns exactly 0.5
    when ``phi z == 0``.
    """
    u = np.multiply(phi, z, dtype=float)
    e = np.exp(-np.abs(u))
    return _as_output(np.where(u >= 0, 1.0 / (1.0 + e), e / (1.0 + e)))


def activation_derivative(z, phi):
    """``dS/dz = phi * S * (1 - S)``.

    ``S (1 - S)`` is formed as ``e / (1 + e)^2`` with ``e = exp(-|phi z|)``,
    which avoids the cancellation in ``1 - S`` once ``S`` rounds to 1.
    """
    phi = np.asarray(phi, dtype=float)
    u = phi * np.asarray(z, dtype=float)
    e = np.exp(-np.abs(u))
    # the factor peaks at exactly 1/4; rounding near u = 0 can overshoot by an ulp
    return _as_output(phi * np.minimum(e / ((1.0 + e) * (1.0 + e)), 0.25))


@dataclass(frozen=True)
class DriverConfig:
    """Serializable description of a :class:`TemporalDriver`."""

    map: ChaoticMap
    alpha0: float = DEFAULT_X0
    alpha_min: float = 0.0
    alpha_max: float = 1.0
    phi_min: float = 0.9
    phi_max: float = 1.1

    def __post_init__(self):
        if isinstance(self.map, dict):
            object.__setattr__(self, "map", ChaoticMap.from_dict(self.map))
        for name in ("alpha0", "alpha_min", "alpha_max", "phi_min", "phi_max"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        _span(self.bounds)
        PhiBounds(self.phi_min, self.phi_max)
        if self.map.kind is MapKind.LOGISTIC and not 0.0 <= self.alpha0 <= 1.0:
            raise DomainError(f"alpha0 must lie in [0, 1] for the logistic map, got {self.alpha0}")

    @property
    def bounds(self) -> AttractorBounds:
        return AttractorBounds(self.alpha_min, self.alpha_max)

    @property
    def phi_bounds(self) -> PhiBounds:
        return PhiBounds(self.phi_min, self.phi_max)

    def replace(self, **changes) -> "DriverConfig":
        d = {**self.__dict__, **changes}
        return DriverConfig(**d)

    def to_dict(self) -> dict:
        return {
            "map": self.map.to_dict(),
            "alpha0": self.alpha0,
            "alpha_min": self.alpha_min,
            "alpha_max": self.alpha_max,
            "phi_min": self.phi_min,
            "phi_max": self.phi_max,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DriverConfig":
        fields = {"map", "alpha0", "alpha_min", "alpha_max", "phi_min", "phi_max"}
        unknown = set(d) - fields
        if unknown:
            raise DomainError(f"unknown driver fields: {sorted(unknown)}")
        missing = fields - set(d)
        if missing:
            raise DomainError(f"missing driver fields: {sorted(missing)}")
        return cls(
            map=ChaoticMap.from_dict(d["map"]),
            **{k: float(d[k]) for k in fields - {"map"}},
        )


class TemporalDriver:
    """Stateful source of the ``phi(t)`` sequence.

    The constructor advances the map ``burn_in`` times from ``alpha0`` so the
    first emitted value already reflects the attractor. Each :meth:`step`
    applies the map once and returns the normalised phi of the new state.
    ``clamped`` counts states that fell outside ``[alpha_min, alpha_max]``.
    """

    def __init__(self, config: DriverConfig, burn_in: int = DEFAULT_BURN_IN):
        self.config = config
        self.map = config.map
        self.bounds = config.bounds
        self.phi = config.phi_bounds
        self.clamped = 0
        alpha = config.alpha0
        for _ in range(int(burn_in)):
            alpha = self.map.step(alpha)
        self.alpha = float(alpha)

    def _advance(self) -> float:
        self.alpha = self.map.step(self.alpha)
        if not math.isfinite(self.alpha):
            raise DivergenceError(f"driver state became non-finite ({self.alpha!r})",
                                  r=self.map.r)
        if not self.bounds.alpha_min <= self.alpha <= self.bounds.alpha_max:
            self.clamped += 1
        return self.alpha

    def step(self) -> float:
        return normalize_phi(self._advance(), self.bounds, self.phi)

    def phi_sequence(self, n: int) -> np.ndarray:
        """The next ``n`` values of phi, exactly as ``n`` calls to :meth:`step`."""
        alphas = np.empty(int(n))
        for i in range(len(alphas)):
            alphas[i] = self._advance()
        return np.atleast_1d(normalize_phi(alphas, self.bounds, self.phi))

    def clone(self) -> "TemporalDriver":
        return copy.copy(self)


def driver_step(driver: TemporalDriver) -> float:
    return driver.step()
