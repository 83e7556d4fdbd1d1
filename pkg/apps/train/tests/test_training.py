import math

import numpy as np
import pytest

from apps.circuit import (
    Observable,
    QuantumModel,
    build_chebyshev_tower,
    evaluate_batch,
    identity_ansatz,
)
from apps.circuit.tests.factories import QuantumModelFactory
from apps.problems import ode_analytic, ode_rhs, target_sin5x
from apps.train import (
    AdamState,
    Dataset,
    OdeSpec,
    OptimizerConfig,
    adam_step,
    fit,
    lbfgs_run,
    minimize_adam,
    minimize_lbfgs,
    mse_loss,
    mse_loss_and_grad,
    ode_residual_loss,
    ode_residual_loss_and_grad,
    scale_targets,
)
from apps.train.losses import residual_loss_from_values
from tools.exceptions import (
    ConfigError,
    DatasetError,
    FrozenModelError,
    TrainingError,
)

H = 1e-5


def flat_model(n_qubits=2, beta=0.5) -> QuantumModel:
    return QuantumModel(
        build_chebyshev_tower(n_qubits),
        identity_ansatz(n_qubits),
        Observable(n_qubits, alpha=0.0, beta=beta),
    )


def fd_gradient(model, loss_fn):
    base = model.theta.copy()
    grads = np.zeros(base.size)
    for k in range(base.size):
        step = np.zeros(base.size)
        step[k] = H
        model.set_theta(base + step)
        plus = loss_fn(model)
        model.set_theta(base - step)
        minus = loss_fn(model)
        grads[k] = (plus - minus) / (2 * H)
    model.set_theta(base)
    return grads


def quadratic(target):
    def objective(params):
        diff = params - target
        return float(diff @ diff), 2 * diff

    return objective

def rosenbrock(params):
    x, y = params
    valley = y - x**2
    loss = (1 - x) ** 2 + 100 * valley**2
    grad = np.array([-2 * (1 - x) - 400 * x * valley, 200 * valley])
    return float(loss), grad



class TestScaleTargets:
    def test_two_values(self):
        scaled, _scaler = scale_targets(Dataset([[0.0], [1.0]], [-3, 3]))
        assert list(scaled.targets) == [0.0, 1.0]

    def test_three_values(self):
        scaled, _ = scale_targets(Dataset([[0], [1], [2]], [0, 1, 2]))
        assert np.allclose(scaled.targets, [0, 0.5, 1])

    def test_round_trip(self):
        targets = np.array([-1.7, 0.3, 2.9, 5.5])
        scaled, scaler = scale_targets(Dataset(np.arange(4.0), targets))
        restored = scaler.inverse(scaled.targets)
        assert np.allclose(restored, targets, atol=1e-12)
        assert scaled.scaling == scaler

    def test_degenerate_range(self):
        with pytest.raises(DatasetError):
            scale_targets(Dataset([[0], [1]], [2.0, 2.0]))


class TestMseLoss:
    def test_exact_fit_is_zero(self):
        model = QuantumModelFactory(seed=1)
        xs = np.linspace(-0.8, 0.8, 6)
        dataset = Dataset(xs, evaluate_batch(model, xs))
        assert mse_loss(model, dataset) == pytest.approx(0.0, abs=1e-24)

    def test_constant_model(self):
        dataset = Dataset([[0.1], [0.9]], [0.0, 1.0])
        assert mse_loss(flat_model(beta=0.5), dataset) == pytest.approx(0.25)

    def test_order_invariance(self):
        model = QuantumModelFactory(seed=2)
        xs = np.linspace(-0.9, 0.9, 7)
        targets = np.cos(3 * xs)
        order = np.random.default_rng(0).permutation(7)
        assert mse_loss(model, Dataset(xs, targets)) == pytest.approx(
            mse_loss(model, Dataset(xs[order], targets[order]))
        )

    def test_empty_dataset(self):
        with pytest.raises(DatasetError):
            mse_loss(flat_model(), Dataset.from_samples([]))

    def test_gradient_matches_finite_difference(self):
        model = QuantumModelFactory(seed=3)
        dataset = Dataset(
            np.linspace(-0.7, 0.7, 5), [0.1, 0.4, 0.9, 0.3, 0.2]
        )
        _loss, grad = mse_loss_and_grad(model, dataset)
        oracle = fd_gradient(model, lambda m: mse_loss(m, dataset))
        assert np.allclose(grad, oracle, atol=1e-6)


class TestOdeResidualLoss:
    def spec(self, rhs, boundary=(0.0, 0.0), collocation=50):
        return OdeSpec(rhs, boundary, (0.0, 1.0), collocation)

    def test_constant_solves_zero_rhs(self):
        ode = self.spec(lambda x: np.zeros_like(x), boundary=(0.0, 0.3))
        assert ode_residual_loss(flat_model(beta=0.3), ode) == pytest.approx(
            0.0, abs=1e-20
        )

    def test_flat_model_residual(self):
        ode = self.spec(ode_rhs)
        expected = np.mean(ode_rhs(ode.grid()) ** 2) + 0.5**2
        loss = ode_residual_loss(flat_model(beta=0.5), ode)
        assert loss == pytest.approx(expected)
        assert loss >= 18.0625 / ode.collocation

    def test_analytic_solution_has_no_residual(self):
        ode = self.spec(ode_rhs)
        grid = ode.grid()
        h = 1e-6
        derivative = (ode_analytic(grid + h) - ode_analytic(grid - h)) / (
            2 * h
        )
        value = residual_loss_from_values(ode, derivative, ode_analytic(0.0))
        assert value < 1e-6

    def test_gradient_matches_finite_difference(self):
        model = QuantumModelFactory(seed=4)
        ode = self.spec(ode_rhs, collocation=6)
        _loss, grad = ode_residual_loss_and_grad(model, ode)
        oracle = fd_gradient(model, lambda m: ode_residual_loss(m, ode))
        assert np.allclose(grad, oracle, atol=1e-5)

    def test_empty_grid(self):
        with pytest.raises(DatasetError):
            self.spec(ode_rhs, collocation=0)

    def test_boundary_outside_domain(self):
        with pytest.raises(DatasetError):
            self.spec(ode_rhs, boundary=(2.0, 0.0))


class TestAdam:
    def config(self, lr=0.1, epochs=200):
        return OptimizerConfig.adam(lr, epochs)

    def test_first_step_magnitude(self):
        state = AdamState.from_config(self.config(lr=0.05), 3)
        params = adam_step(state, np.zeros(3), np.array([2.0, -0.3, 7.0]))
        assert np.allclose(np.abs(params), 0.05, rtol=1e-6)

    def test_zero_gradient(self):
        state = AdamState.from_config(self.config(), 2)
        params = np.array([0.4, -1.2])
        assert np.array_equal(adam_step(state, params, np.zeros(2)), params)

    def test_nan_gradient(self):
        state = AdamState.from_config(self.config(), 1)
        adam_step(state, np.zeros(1), np.ones(1))
        with pytest.raises(TrainingError) as error:
            adam_step(state, np.zeros(1), np.array([np.nan]))
        assert error.value.epoch == 1

    def test_quadratic_oracle(self):
        result = minimize_adam(
            quadratic(np.ones(4)), np.zeros(4), self.config()
        )
        assert result.final_loss < 1e-4
        assert len(result.trajectory) == 200

    def test_same_config_same_trajectory(self):
        first = minimize_adam(
            quadratic(np.ones(3)), np.zeros(3), self.config()
        )
        second = minimize_adam(
            quadratic(np.ones(3)), np.zeros(3), self.config()
        )
        assert first.trajectory == second.trajectory


class TestLbfgs:
    def test_quadratic_converges(self):
        config = OptimizerConfig.lbfgs(lr=1.0, epochs=20)
        result = minimize_lbfgs(
            quadratic(np.ones(1)), np.array([3.0]), config
        )
        assert result.params[0] == pytest.approx(1.0, abs=1e-6)
        assert result.improved

    def test_zero_gradient_start(self):
        config = OptimizerConfig.lbfgs(lr=0.5, epochs=20)
        result = minimize_lbfgs(quadratic(np.ones(2)), np.ones(2), config)
        assert result.trajectory == [0.0]
        assert np.array_equal(result.params, np.ones(2))

    def test_no_history_is_gradient_descent(self):
        config = OptimizerConfig.lbfgs(lr=0.1, epochs=10, history=0)
        result = minimize_lbfgs(quadratic(np.ones(2)), np.zeros(2), config)
        assert result.final_loss < result.trajectory[0]
        assert result.trajectory == sorted(result.trajectory, reverse=True)

    def test_rosenbrock_loss_never_increases(self):
        config = OptimizerConfig.lbfgs(lr=1.0, epochs=60)
        result = minimize_lbfgs(rosenbrock, np.array([-1.2, 1.0]), config)
        assert result.improved
        assert result.final_loss <= result.trajectory[0]
        assert result.trajectory == sorted(result.trajectory, reverse=True)
        assert result.final_loss < 0.1 * result.trajectory[0]

    def test_oversized_step_is_backtracked(self):
        config = OptimizerConfig.lbfgs(lr=50.0, epochs=10)
        start = np.array([-1.2, 1.0])
        result = minimize_lbfgs(rosenbrock, start, config)
        assert result.final_loss <= rosenbrock(start)[0]
        assert result.improved
        assert rosenbrock(result.params)[0] == result.final_loss

    def test_no_acceptable_step_keeps_start(self):
        def uphill(params):
            return float(np.exp(params[0])), np.array([-1.0])

        config = OptimizerConfig.lbfgs(lr=1.0, epochs=5)
        result = minimize_lbfgs(uphill, np.zeros(1), config)
        assert result.trajectory == [1.0]
        assert np.array_equal(result.params, np.zeros(1))
        assert result.improved

    def test_nan_loss(self):
        config = OptimizerConfig.lbfgs(lr=0.1, epochs=3)
        with pytest.raises(TrainingError):
            minimize_lbfgs(
                lambda p: (float("nan"), np.ones(1)), np.zeros(1), config
            )

    def test_lbfgs_run_requires_lbfgs_config(self):
        with pytest.raises(ConfigError):
            lbfgs_run(
                QuantumModelFactory(),
                Dataset([[0.1]], [0.2]),
                OptimizerConfig.adam(0.1, 5),
            )

    def test_lbfgs_run_on_model(self):
        model = QuantumModelFactory(seed=5)
        xs = np.linspace(0, 1, 8)
        dataset = Dataset(xs, target_sin5x(xs))
        report = lbfgs_run(model, dataset, OptimizerConfig.lbfgs(0.05, 5))
        assert len(report.loss_trajectory) <= 5
        assert not model.frozen


class TestOptimizerConfig:
    @pytest.mark.parametrize("lr", [0.0, -0.1, math.inf])
    def test_invalid_lr(self, lr):
        with pytest.raises(ConfigError):
            OptimizerConfig.adam(lr, 10)

    def test_invalid_epochs(self):
        with pytest.raises(ConfigError):
            OptimizerConfig.adam(0.1, 0)


class TestFit:
    def dataset(self):
        xs = np.linspace(0.0, 1.0, 12)
        return Dataset(xs, target_sin5x(xs))

    def test_no_stages_reports_initial_loss(self):
        model = QuantumModelFactory(seed=6)
        initial = mse_loss(model, self.dataset())
        report = fit(model, self.dataset(), [])
        assert report.loss_trajectory == [initial]
        assert report.final_loss == initial
        assert model.frozen

    def test_training_decreases_loss_and_freezes(self):
        model = QuantumModelFactory(
            n_qubits=3, depth=2, seed=7, alpha=6.0, beta=0.0
        )
        report = fit(model, self.dataset(), OptimizerConfig.adam(0.1, 30))
        assert len(report.loss_trajectory) == 30
        assert report.final_loss < report.loss_trajectory[0]
        assert model.frozen
        assert np.array_equal(report.final_theta, model.theta)

    def test_stages_concatenate(self):
        model = QuantumModelFactory(seed=8)
        stages = [
            OptimizerConfig.adam(0.1, 4),
            OptimizerConfig.lbfgs(0.05, 3),
        ]
        report = fit(model, self.dataset(), stages)
        assert len(report.loss_trajectory) <= 7
        assert len(report.stages) == 2

    def test_frozen_model_cannot_be_trained(self):
        model = QuantumModelFactory().freeze()
        with pytest.raises(FrozenModelError):
            fit(model, self.dataset(), OptimizerConfig.adam(0.1, 1))

    def test_deterministic(self):
        reports = [
            fit(
                QuantumModelFactory(seed=9),
                self.dataset(),
                OptimizerConfig.adam(0.2, 8),
            )
            for _ in range(2)
        ]
        assert reports[0].loss_trajectory == reports[1].loss_trajectory

    def test_ode_training_decreases_residual(self):
        model = QuantumModelFactory(
            n_qubits=3, depth=2, seed=10, alpha=6.0, beta=0.0
        )
        ode = OdeSpec(ode_rhs, (0.0, 0.0), (0.0, 1.0), 10)
        report = fit(model, ode, OptimizerConfig.adam(0.1, 15))
        assert report.final_loss < report.loss_trajectory[0]

    def test_ode_lbfgs_stage_does_not_diverge(self):
        model = QuantumModelFactory(
            n_qubits=3, depth=2, seed=11, alpha=6.0, beta=0.0
        )
        ode = OdeSpec(ode_rhs, (0.0, 0.0), (0.0, 1.0), 10)
        report = lbfgs_run(model, ode, OptimizerConfig.lbfgs(1.0, 10))
        assert report.improved
        assert report.final_loss <= report.loss_trajectory[0]
        assert report.final_loss == pytest.approx(
            ode_residual_loss(model, ode)
        )
