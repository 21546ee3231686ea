from __future__ import annotations

import hashlib
import math

import numpy as np
import pytest

from chaotic_sigmoid.activation import DriverConfig, activation
from chaotic_sigmoid.chaos import ChaoticMap
from chaotic_sigmoid.errors import DivergenceError, DomainError, ShapeError
from chaotic_sigmoid.neuron import (
    SpatioTemporalNeuron,
    TrainConfig,
    forward,
    generate,
    logistic_target,
    loss_and_gradient,
    mse_loss,
    teacher_target,
    train,
)

NARROW = DriverConfig(ChaoticMap.logistic(4.0), 0.1, 0.0, 1.0, 0.9, 1.1)
WIDE = NARROW.replace(phi_min=-2.7, phi_max=3.5)


@pytest.fixture(scope="module")
def teacher_problem():
    teacher = SpatioTemporalNeuron([1.3], -0.2, WIDE)
    return teacher, teacher_target(teacher, 1.0, 2000)


class TestForward:
    def test_zero_weights_give_half(self):
        out = forward(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.linspace(-5, 5, 100))
        assert np.all(out == 0.5)

    def test_matches_pointwise_definition(self):
        n = SpatioTemporalNeuron([0.7, -1.2], 0.3, WIDE)
        x = np.random.default_rng(0).normal(size=(40, 2))
        phi = n.phi_sequence(40)
        expected = [activation(x[t] @ n.weights + n.bias, phi[t]) for t in range(40)]
        np.testing.assert_allclose(forward(n, x), expected, rtol=1e-15, atol=0)

    def test_flat_input_statistics(self):
        out = generate(SpatioTemporalNeuron([1.0], 0.0, NARROW), 1.0, 10_000)
        assert out.mean() == pytest.approx(activation(1.0, 1.0), abs=0.005)
        assert out.std() == pytest.approx(0.013, abs=0.002)

    def test_deterministic(self):
        n = SpatioTemporalNeuron([1.0], 0.0, WIDE)
        assert generate(n, 1.0, 500).tobytes() == generate(n, 1.0, 500).tobytes()

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            forward(SpatioTemporalNeuron([1.0, 2.0], 0.0, WIDE), np.ones((5, 3)))
        with pytest.raises(ShapeError):
            forward(SpatioTemporalNeuron([1.0, 2.0], 0.0, WIDE), np.ones(5))


class TestGenerate:
    def test_length_one(self):
        assert generate(SpatioTemporalNeuron([2.0], 0.1, WIDE), 1.0, 1).shape == (1,)

    def test_wide_phi_range(self):
        out = generate(SpatioTemporalNeuron([1.0], 0.0, WIDE), 1.0, 10_000)
        # endpoints: S(1, -2.7) ~ 0.063, S(1, 3.5) ~ 0.971
        assert out.min() < 0.15 and out.max() > 0.9
        assert out.min() >= activation(1.0, -2.7) - 1e-12
        assert out.max() <= activation(1.0, 3.5) + 1e-12

    def test_invalid_n(self):
        with pytest.raises(DomainError):
            generate(SpatioTemporalNeuron([1.0], 0.0, WIDE), 1.0, 0)


class TestMSE:
    @pytest.mark.parametrize("a, b, expected", [
        ([0.5, 0.5], [0.5, 0.5], 0.0),
        ([1, 0], [0, 1], 1.0),
        ([0.2, 0.4], [0.0, 0.0], 0.1),
    ])
    def test_values(self, a, b, expected):
        assert mse_loss(a, b) == pytest.approx(expected)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            mse_loss([1, 2], [1])


class TestGradient:
    def test_against_finite_differences(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(50):
            dim = int(rng.integers(1, 4))
            cfg = NARROW.replace(alpha0=float(rng.uniform(0.05, 0.95)),
                                 phi_min=-1.0, phi_max=float(rng.uniform(0.5, 3.0)))
            n = SpatioTemporalNeuron(rng.normal(size=dim), float(rng.normal()), cfg)
            x = rng.normal(size=(50, dim))
            y = rng.uniform(0.1, 0.9, 50)
            _, gw, gb = loss_and_gradient(n, x, y, n.phi_sequence(50))
            grad = np.append(gw, gb)
            p = np.append(n.weights, n.bias)
            for j in range(p.size):
                h = 1e-6
                up, dn = p.copy(), p.copy()
                up[j] += h
                dn[j] -= h
                f_up = mse_loss(forward(SpatioTemporalNeuron(up[:-1], up[-1], cfg), x), y)
                f_dn = mse_loss(forward(SpatioTemporalNeuron(dn[:-1], dn[-1], cfg), x), y)
                fd = (f_up - f_dn) / (up[j] - dn[j])
                worst = max(worst, abs(grad[j] - fd) / max(abs(fd), 1e-8))
        assert worst < 1e-5


class TestTrain:
    def test_teacher_student(self, teacher_problem):
        teacher, target = teacher_problem
        student, report = train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.ones(2000), target,
                                TrainConfig(learning_rate=0.5, max_epochs=20_000))
        assert report.final_mse < 1e-6
        assert abs((student.weights[0] + student.bias) - 1.1) < 1e-3
        assert report.epochs_run == len(report.loss_curve)
        assert report.final_mse == report.loss_curve[-1]

    def test_constant_target(self):
        student, report = train(SpatioTemporalNeuron([0.8], 0.3, NARROW), np.ones(500),
                                np.full(500, 0.5), TrainConfig(learning_rate=2.0, mse_tolerance=1e-10))
        assert report.final_mse < 1e-8
        assert abs(student.weights[0] + student.bias) < 1e-3

    def test_zero_learning_rate(self, teacher_problem):
        _, target = teacher_problem
        start = SpatioTemporalNeuron([0.4], 0.1, WIDE)
        model, report = train(start, np.ones(2000), target, TrainConfig(0.0, 25, 0.0))
        assert model.weights.tolist() == [0.4] and model.bias == 0.1
        assert report.epochs_run == 25
        assert np.all(report.loss_curve == report.initial_mse)

    def test_does_not_mutate_input(self, teacher_problem):
        _, target = teacher_problem
        start = SpatioTemporalNeuron([0.0], 0.0, WIDE)
        train(start, np.ones(2000), target, TrainConfig(0.5, 10))
        assert start.weights.tolist() == [0.0] and start.bias == 0.0

    def test_phi_replayed_every_epoch(self, teacher_problem):
        _, target = teacher_problem
        digests = set()

        def record(epoch, phi, loss):
            digests.add(hashlib.sha256(phi.tobytes()).hexdigest())

        train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.ones(2000), target,
              TrainConfig(0.5, 50, 0.0), on_epoch=record)
        expected = hashlib.sha256(SpatioTemporalNeuron([0.0], 0.0, WIDE)
                                  .phi_sequence(2000).tobytes()).hexdigest()
        assert digests == {expected}

    def test_monotone_loss_small_lr(self, teacher_problem):
        _, target = teacher_problem
        _, report = train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.ones(2000), target,
                          TrainConfig(1e-3, 2000, 0.0))
        assert np.all(np.diff(report.loss_curve) <= 1e-12)

    def test_bias_frozen(self, teacher_problem):
        _, target = teacher_problem
        model, _ = train(SpatioTemporalNeuron([0.0], 0.25, WIDE), np.ones(2000), target,
                         TrainConfig(0.5, 100, train_bias=False))
        assert model.bias == 0.25
        assert model.weights[0] != 0.0

    def test_divergence(self):
        with pytest.raises(DivergenceError) as info:
            train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.full(100, 1e10), np.full(100, 0.9),
                  TrainConfig(learning_rate=1e308, max_epochs=5))
        assert info.value.epoch == 1

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.ones(10), np.ones(9) / 2)

    def test_warns_on_unreachable_target(self):
        with pytest.warns(UserWarning):
            train(SpatioTemporalNeuron([0.0], 0.0, WIDE), np.ones(10), np.full(10, 1.5),
                  TrainConfig(0.1, 2))

    def test_logistic_target_fit(self):
        # target built from the same orbit that drives phi (alpha0 advanced past burn-in)
        target = logistic_target(ChaoticMap.logistic(4.0), 0.1, 1001, 2000)
        assert target.min() == pytest.approx(0.1) and target.max() == pytest.approx(0.9)
        start = SpatioTemporalNeuron([0.0], 0.0, WIDE)
        initial = mse_loss(generate(start, 1.0, 2000), target)
        _, report = train(start, np.ones(2000), target, TrainConfig(0.5, 2000))
        assert report.final_mse < 0.1 * initial


class TestTrainConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            TrainConfig(learning_rate=-1)
        with pytest.raises(DomainError):
            TrainConfig(max_epochs=0)

    def test_model_round_trip(self):
        n = SpatioTemporalNeuron([1.5, -0.5], 0.25, WIDE)
        d = n.to_dict()
        assert list(d) == ["weights", "bias", "driver"]
        back = SpatioTemporalNeuron.from_dict(d)
        assert back.weights.tolist() == [1.5, -0.5] and back.bias == 0.25 and back.driver == WIDE

    def test_invalid_neuron(self):
        with pytest.raises(DomainError):
            SpatioTemporalNeuron([], 0.0, WIDE)
        with pytest.raises(DomainError):
            SpatioTemporalNeuron([math.inf], 0.0, WIDE)
