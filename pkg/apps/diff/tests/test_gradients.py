import math

import numpy as np
import pytest

from apps.circuit import (
    CircuitIR,
    Observable,
    Operation,
    ParamBinding,
    QuantumModel,
    build_chebyshev_tower,
    build_hea,
    domain_rescaling,
    evaluate_model,
    identity_ansatz,
    init_theta,
)
from apps.diff import (
    grad_theta,
    grad_theta_of_dfdx,
    grad_x,
    shift_rule,
)
from apps.diff.constants import DiffConstants
from apps.sim.gates import GateKind
from tools.exceptions import BindingError, ShiftRuleError
from tools.utils import make_rng

H = DiffConstants.FD_STEP


def single_rotation(kind: GateKind, theta: float) -> QuantumModel:
    ansatz = CircuitIR(
        1, (Operation(kind, (0,), ParamBinding.variational(0)),), 1
    )
    return QuantumModel(
        CircuitIR(1), ansatz, Observable(1, alpha=2.0, beta=0.0), [theta]
    )


def random_model(n_qubits, depth, seed, alpha=1.0, beta=0.5):
    ansatz = build_hea(n_qubits, depth)
    return QuantumModel(
        build_chebyshev_tower(n_qubits),
        ansatz,
        Observable(n_qubits, alpha=alpha, beta=beta),
        init_theta(ansatz.n_variational, make_rng(seed)) * 20,
    )


def fd_theta(model: QuantumModel, features, fn=None) -> np.ndarray:
    fn = fn or (lambda m: evaluate_model(m, features))
    base = model.theta.copy()
    grads = np.zeros(base.size)
    for k in range(base.size):
        step = np.zeros(base.size)
        step[k] = H
        model.set_theta(base + step)
        plus = fn(model)
        model.set_theta(base - step)
        minus = fn(model)
        grads[k] = (plus - minus) / (2 * H)
    model.set_theta(base)
    return grads


def fd_x(model: QuantumModel, x: float) -> float:
    plus = evaluate_model(model, [x + H])
    minus = evaluate_model(model, [x - H])
    return (plus - minus) / (2 * H)


class TestShiftRule:
    def test_rotation_rule(self):
        assert shift_rule(GateKind.RY) == (
            (math.pi / 2, 0.5),
            (-math.pi / 2, -0.5),
        )

    def test_cry_has_four_terms(self):
        assert len(shift_rule(GateKind.CRY)) == 4

    @pytest.mark.parametrize("kind", [GateKind.X, GateKind.CNOT])
    def test_constant_gate_has_no_rule(self, kind):
        with pytest.raises(ShiftRuleError):
            shift_rule(kind)


class TestGradTheta:
    def test_extremum_of_cosine(self):
        report = grad_theta(single_rotation(GateKind.RY, 0.0), [])
        assert report.values[0] == pytest.approx(0.0, abs=1e-12)

    def test_cosine_at_pi_over_three(self):
        report = grad_theta(single_rotation(GateKind.RY, math.pi / 3), [])
        assert report.values[0] == pytest.approx(-math.sin(math.pi / 3))
        assert report.evaluations == 2

    def test_matches_finite_difference(self):
        model = random_model(3, 2, seed=1)
        for x in (-0.6, 0.2, 0.85):
            report = grad_theta(model, [x])
            assert np.allclose(report.values, fd_theta(model, [x]), atol=1e-6)
            assert report.evaluations == 2 * model.ansatz.n_variational

    def test_cry_four_term_rule(self):
        theta = 0.9
        feature_map = CircuitIR(2, (Operation(GateKind.H, (0,)),))
        ansatz = CircuitIR(
            2,
            (Operation(GateKind.CRY, (0, 1), ParamBinding.variational(0)),),
            1,
        )
        model = QuantumModel(
            feature_map, ansatz, Observable(2, alpha=4.0, beta=0.0), [theta]
        )
        report = grad_theta(model, [])
        assert report.values[0] == pytest.approx(-0.5 * math.sin(theta))
        assert report.evaluations == 4
        assert np.allclose(report.values, fd_theta(model, []), atol=1e-6)

    def test_linearity_in_alpha(self):
        raw = random_model(3, 2, seed=2, alpha=6.0, beta=0.0)
        scaled = QuantumModel(
            raw.feature_map, raw.ansatz, Observable(3, 2.5, 0.3), raw.theta
        )
        gain = scaled.observable.gain
        assert np.allclose(
            grad_theta(scaled, [0.4]).values,
            gain * grad_theta(raw, [0.4]).values,
            atol=1e-12,
        )

    def test_frozen_theta_untouched(self):
        model = random_model(2, 2, seed=3).freeze()
        before = model.theta.copy()
        grad_theta(model, [0.3])
        grad_theta_of_dfdx(model, 0.3)
        assert np.array_equal(before, model.theta)


class TestGradX:
    def raw_tower(self, n_qubits):
        return QuantumModel(
            build_chebyshev_tower(n_qubits),
            identity_ansatz(n_qubits),
            Observable(n_qubits, alpha=2.0 * n_qubits, beta=0.0),
        )

    def test_chebyshev_derivative(self):
        report = grad_x(self.raw_tower(1), 0.5)
        assert report.values[0] == pytest.approx(2.0)
        assert not report.clamped

    def test_zero_at_origin(self):
        assert grad_x(self.raw_tower(1), 0.0).values[0] == pytest.approx(
            0.0, abs=1e-12
        )

    def test_matches_finite_difference(self):
        model = random_model(3, 3, seed=4)
        for x in make_rng(8).uniform(-0.9, 0.9, size=50):
            value = grad_x(model, x).values[0]
            assert value == pytest.approx(fd_x(model, x), abs=1e-5)

    def test_clamped_edge_is_finite(self):
        report = grad_x(random_model(2, 2, seed=5), 1 - 1e-7)
        assert np.all(np.isfinite(report.values))

    def test_outside_domain_is_flagged(self):
        report = grad_x(random_model(2, 2, seed=5), 1.5)
        assert report.clamped
        assert np.all(np.isfinite(report.values))

    def test_rescaled_tower_matches_finite_difference(self):
        scale, shift = domain_rescaling((0.0, 1.0), 0.9)
        ansatz = build_hea(3, 2)
        model = QuantumModel(
            build_chebyshev_tower(3, scale=scale, shift=shift),
            ansatz,
            Observable(3, alpha=6.0, beta=0.0),
            init_theta(ansatz.n_variational, make_rng(9), math.pi),
        )
        for x in np.linspace(0.0, 1.0, 11):
            report = grad_x(model, x)
            assert not report.clamped
            assert report.values[0] == pytest.approx(fd_x(model, x), abs=1e-5)

    def test_requires_continuous_feature(self):
        model = QuantumModel(CircuitIR(2), identity_ansatz(2))
        with pytest.raises(BindingError):
            grad_x(model, [])


class TestGradThetaOfDfdx:
    def test_commuting_parameter_has_no_effect(self):
        ansatz = CircuitIR(
            2, (Operation(GateKind.RZ, (0,), ParamBinding.variational(0)),), 1
        )
        model = QuantumModel(build_chebyshev_tower(2), ansatz, theta=[0.0])
        report = grad_theta_of_dfdx(model, 0.3)
        assert np.allclose(report.values, 0.0, atol=1e-12)

    def test_matches_finite_difference_of_grad_x(self):
        model = random_model(2, 2, seed=6)
        x = 0.37
        report = grad_theta_of_dfdx(model, x)
        oracle = fd_theta(model, [x], lambda m: grad_x(m, x).values[0])
        assert np.allclose(report.values, oracle, atol=1e-5)

    def test_evaluation_count(self):
        model = random_model(2, 2, seed=7)
        report = grad_theta_of_dfdx(model, 0.1)
        assert report.evaluations == 4 * model.ansatz.n_variational * 2
