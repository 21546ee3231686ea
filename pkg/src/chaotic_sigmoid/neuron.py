"""A single neuron with the spatio-temporal sigmoid, and its trainer.

The neuron computes ``y[t] = S(w . x[t] + b, phi(t))`` where ``phi(t)`` is the
t-th emission of a freshly built :class:`TemporalDriver`. Because the driver
is rebuilt from its configuration on every call, ``forward`` is a pure
function of the neuron value and the inputs, and training replays the same
phi sequence in every epoch.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .activation import DriverConfig, TemporalDriver, activation, activation_derivative
from .chaos import DEFAULT_BURN_IN, ChaoticMap, iterate_map
from .errors import DivergenceError, DomainError, ShapeError


@dataclass
class SpatioTemporalNeuron:
    weights: np.ndarray
    bias: float
    driver: DriverConfig
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        self.bias = float(self.bias)
        if self.weights.ndim != 1 or self.weights.size == 0:
            raise DomainError("weights must be a non-empty vector")
        if not (np.isfinite(self.weights).all() and math.isfinite(self.bias)):
            raise DomainError("weights and bias must be finite")
        if isinstance(self.driver, dict):
            self.driver = DriverConfig.from_dict(self.driver)

    @property
    def n_inputs(self) -> int:
        return self.weights.size

    def copy(self) -> "SpatioTemporalNeuron":
        return SpatioTemporalNeuron(self.weights.copy(), self.bias, self.driver, self.burn_in)

    def phi_sequence(self, n: int) -> np.ndarray:
        return TemporalDriver(self.driver, burn_in=self.burn_in).phi_sequence(n)

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "bias": self.bias,
            "driver": self.driver.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpatioTemporalNeuron":
        unknown = set(d) - {"weights", "bias", "driver"}
        if unknown:
            raise DomainError(f"unknown model fields: {sorted(unknown)}")
        return cls(
            weights=np.asarray(d["weights"], dtype=float),
            bias=float(d["bias"]),
            driver=DriverConfig.from_dict(d["driver"]),
        )


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    max_epochs: int = 20_000
    mse_tolerance: float = 1e-12
    train_bias: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.learning_rate) and self.learning_rate >= 0):
            raise DomainError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if int(self.max_epochs) < 1:
            raise DomainError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if not self.mse_tolerance >= 0:
            raise DomainError(f"mse_tolerance must be >= 0, got {self.mse_tolerance}")


@dataclass
class TrainReport:
    final_mse: float
    epochs_run: int
    loss_curve: np.ndarray
    initial_mse: float = field(default=float("nan"))


def _as_inputs(neuron: SpatioTemporalNeuron, inputs) -> np.ndarray:
    x = np.asarray(inputs, dtype=float)
    if x.ndim == 1:
        if neuron.n_inputs != 1:
            raise ShapeError(
                f"got a scalar input series but the neuron has {neuron.n_inputs} weights"
            )
        x = x[:, None]
    if x.ndim != 2 or x.shape[1] != neuron.n_inputs:
        raise ShapeError(
            f"input vectors have shape {x.shape[1:]} but the neuron has {neuron.n_inputs} weights"
        )
    if x.shape[0] < 1:
        raise ShapeError("input series is empty")
    return x


def _forward(neuron, x, phi):
    return activation(x @ neuron.weights + neuron.bias, phi)


def forward(neuron: SpatioTemporalNeuron, inputs) -> np.ndarray:
    """Output series for an ``(n, d)`` input array (or length-n for ``d == 1``)."""
    x = _as_inputs(neuron, inputs)
    return np.atleast_1d(_forward(neuron, x, neuron.phi_sequence(len(x))))


def generate(neuron: SpatioTemporalNeuron, flat_value: float = 1.0, n: int = 1) -> np.ndarray:
    if int(n) < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return forward(neuron, np.full((int(n), neuron.n_inputs), float(flat_value)))


def mse_loss(output, target) -> float:
    output = np.asarray(output, dtype=float)
    target = np.asarray(target, dtype=float)
    if output.shape != target.shape:
        raise ShapeError(f"length mismatch: {output.shape} vs {target.shape}")
    if output.size < 1:
        raise ShapeError("mse_loss needs at least one sample")
    d = output - target
    return float(np.mean(d * d))


def loss_and_gradient(neuron: SpatioTemporalNeuron, x: np.ndarray, target, phi):
    """MSE and its analytic gradient for a fixed phi sequence.

    Returns ``(loss, grad_weights, grad_bias)``.
    """
    z = x @ neuron.weights + neuron.bias
    s = activation(z, phi)
    err = s - target
    delta = 2.0 * err * activation_derivative(z, phi) / len(err)
    return float(np.mean(err * err)), x.T @ delta, float(delta.sum())


def train(
    neuron: SpatioTemporalNeuron,
    inputs,
    target,
    config: TrainConfig = TrainConfig(),
    on_epoch: Callable[[int, np.ndarray, float], None] | None = None,
) -> tuple[SpatioTemporalNeuron, TrainReport]:
    """Full-batch gradient descent on the MSE over weights (and bias).

    The phi sequence is generated once from the neuron's driver configuration
    and replayed unchanged in every epoch. ``loss_curve[k]`` is the loss after
    the k-th update; training stops after ``max_epochs`` updates or once the
    loss is at or below ``mse_tolerance``. ``on_epoch(epoch, phi, loss)`` is
    called after every update.

    Raises
    ------
    ShapeError
        ``inputs`` and ``target`` disagree in length or dimension.
    DivergenceError
        Loss or parameters became non-finite; ``epoch`` is attached.
    """
    x = _as_inputs(neuron, inputs)
    y = np.asarray(target, dtype=float)
    if y.ndim != 1 or len(y) != len(x):
        raise ShapeError(f"target length {y.shape} does not match {len(x)} input steps")
    if ((y < 0) | (y > 1)).any():
        warnings.warn("target has values outside [0, 1]; the sigmoid cannot reach them",
                      stacklevel=2)

    model = neuron.copy()
    phi = model.phi_sequence(len(x))
    phi.setflags(write=False)
    lr = float(config.learning_rate)

    loss, gw, gb = loss_and_gradient(model, x, y, phi)
    initial = loss
    curve = []
    for epoch in range(1, int(config.max_epochs) + 1):
        # non-finite results are detected below and reported as divergence
        with np.errstate(over="ignore", invalid="ignore"):
            model.weights = model.weights - lr * gw
            if config.train_bias:
                model.bias = model.bias - lr * gb
            loss, gw, gb = loss_and_gradient(model, x, y, phi)
        if not (math.isfinite(loss) and np.isfinite(model.weights).all()
                and math.isfinite(model.bias)):
            raise DivergenceError(f"training diverged at epoch {epoch}", epoch=epoch)
        curve.append(loss)
        if on_epoch is not None:
            on_epoch(epoch, phi, loss)
        if loss <= config.mse_tolerance:
            break

    report = TrainReport(
        final_mse=curve[-1], epochs_run=len(curve), loss_curve=np.asarray(curve),
        initial_mse=initial,
    )
    return model, report


def teacher_target(teacher: SpatioTemporalNeuron, flat_value: float = 1.0,
                   n: int = 2000) -> np.ndarray:
    """Target series produced by a known neuron on flat input."""
    return generate(teacher, flat_value, n)


def logistic_target(m: ChaoticMap, x0: float = 0.1, burn_in: int = DEFAULT_BURN_IN,
                    n: int = 2000, lo: float = 0.1, hi: float = 0.9) -> np.ndarray:
    """A chaotic orbit affinely rescaled from its own extremes onto ``[lo, hi]``."""
    s = iterate_map(m, x0, burn_in, n).samples
    span = s.max() - s.min()
    if span <= 0:
        return np.full_like(s, 0.5 * (lo + hi))
    return lo + (s - s.min()) / span * (hi - lo)
