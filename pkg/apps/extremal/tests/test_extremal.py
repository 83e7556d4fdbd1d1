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
    build_digital_feature_map,
    build_hea,
    build_mixed_feature_map,
    evaluate_model,
    identity_ansatz,
    init_theta,
)
from apps.circuit.constants import CircuitConstants
from apps.circuit.tests.factories import QuantumModelFactory
from apps.extremal import (
    ExtremalResult,
    ExtremizeConfig,
    build_extremizer_feature_map,
    build_mixed_extremizer,
    extremize_continuous,
    extremize_mixed,
    extremizer_objective,
    mixed_layout,
    n_marginal,
    rank_candidates,
    sample_extremizer,
    total_optimal_probability,
    train_extremizer_discrete,
)
from apps.extremal.mixed import mixed_objective, mixed_objective_and_grad
from apps.problems.constants import Direction
from apps.sim.gates import GateKind
from tools.exceptions import BindingError, ConfigError, FrozenModelError
from tools.utils import bits_to_int, make_rng

EPS = CircuitConstants.CLAMP_EPS


def t2_model() -> QuantumModel:
    """Um qubit, ansatz identidade: saída bruta T₂(x) = 2x² − 1."""
    return QuantumModel(
        build_chebyshev_tower(1),
        identity_ansatz(1),
        Observable(1, alpha=2.0, beta=0.0),
    ).freeze()


def digital_identity_model(n_qubits: int) -> QuantumModel:
    return QuantumModel(
        build_digital_feature_map(n_qubits),
        identity_ansatz(n_qubits),
        Observable(n_qubits, alpha=2.0 * n_qubits, beta=0.0),
    ).freeze()


def diagonal_ansatz(n_qubits: int) -> CircuitIR:
    """RZ + CNOT: leva base em base, então U†MU é diagonal."""
    ops = []
    for qubit in range(n_qubits):
        ops.append(
            Operation(GateKind.RZ, (qubit,), ParamBinding.variational(qubit))
        )
    for qubit in range(n_qubits - 1):
        ops.append(Operation(GateKind.CNOT, (qubit, qubit + 1)))
    ops.append(Operation(GateKind.X, (0,)))
    return CircuitIR(n_qubits, tuple(ops), n_variational=n_qubits)


def mixed_model(seed: int = 0, ansatz=None) -> QuantumModel:
    ansatz = ansatz or build_hea(5, 1)
    return QuantumModel(
        build_mixed_feature_map(3, 2),
        ansatz,
        Observable(5, alpha=1.0, beta=0.5),
        init_theta(ansatz.n_variational, make_rng(seed)) * 10,
    ).freeze()


class TestExtremizeConfig:
    @pytest.mark.parametrize("lr", [0.0, -0.1, math.nan])
    def test_invalid_lr(self, lr):
        with pytest.raises(ConfigError):
            ExtremizeConfig(lr=lr)

    def test_invalid_epochs(self):
        with pytest.raises(ConfigError):
            ExtremizeConfig(epochs=0)

    def test_inverted_bounds(self):
        with pytest.raises(ConfigError):
            ExtremizeConfig(bounds=(1.0, 0.0))

    def test_domain_intersection(self):
        assert ExtremizeConfig().domain() == (-1 + EPS, 1 - EPS)
        assert ExtremizeConfig(bounds=(0.0, 1.0)).domain() == (0.0, 1 - EPS)

    def test_direction_from_string(self):
        config = ExtremizeConfig(direction="minimize")
        assert config.direction == Direction.MINIMIZE


class TestExtremizeContinuous:
    def test_maximize_reaches_boundary(self):
        config = ExtremizeConfig(lr=0.05, epochs=100, x0=[0.5])
        result = extremize_continuous(t2_model(), config)
        assert result.best_input == 1 - EPS
        assert result.best_value == pytest.approx(1.0, abs=1e-5)
        assert len(result.trajectory) == 100
        assert result.inputs[0] == 0.5

    def test_minimize_reaches_center(self):
        config = ExtremizeConfig(
            Direction.MINIMIZE, lr=0.01, epochs=300, x0=[0.3]
        )
        result = extremize_continuous(t2_model(), config)
        assert abs(result.best_input) < 0.02
        assert result.best_value == pytest.approx(-1.0, abs=2e-3)

    def test_bounds_are_respected(self):
        config = ExtremizeConfig(
            lr=0.05, epochs=50, x0=[0.2], bounds=(0.0, 0.6)
        )
        result = extremize_continuous(t2_model(), config)
        assert result.best_input == pytest.approx(0.6)
        assert all(0.0 <= x <= 0.6 for x in result.inputs)

    def test_theta_untouched(self):
        model = QuantumModelFactory(seed=4).freeze()
        before = model.theta.copy()
        extremize_continuous(model, ExtremizeConfig(epochs=10, x0=[0.1]))
        assert np.array_equal(model.theta, before)

    def test_requires_frozen_model(self):
        with pytest.raises(FrozenModelError):
            extremize_continuous(QuantumModelFactory(), ExtremizeConfig())

    def test_rejects_multi_feature_model(self):
        with pytest.raises(BindingError):
            extremize_continuous(mixed_model(), ExtremizeConfig())

    def test_value_matches_model(self):
        model = QuantumModelFactory(seed=5).freeze()
        result = extremize_continuous(
            model, ExtremizeConfig(epochs=5, x0=[0.2])
        )
        assert result.best_value == pytest.approx(
            evaluate_model(model, [result.best_input])
        )


class TestExtremizerFeatureMap:
    def test_parameter_count(self):
        efm = build_extremizer_feature_map(3, rng=make_rng(0))
        assert efm.chi.size == 2 * 3 * 9

    def test_zero_parameters_fix_ground_state(self):
        efm = build_extremizer_feature_map(3, chi=np.zeros(54))
        result = sample_extremizer(efm)
        assert result.distribution["000"] == pytest.approx(1.0)
        assert result.top_candidates[0] == ("000", pytest.approx(1.0))

    def test_distribution_is_normalized(self):
        rng = make_rng(1)
        efm = build_extremizer_feature_map(
            4, chi=rng.uniform(-math.pi, math.pi, 2 * 4 * 16)
        )
        distribution = sample_extremizer(efm, top_k=3).distribution
        values = np.array(list(distribution.values()))
        assert len(distribution) == 16
        assert values.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.all((values >= 0) & (values <= 1))

    def test_wrong_parameter_count(self):
        with pytest.raises(BindingError):
            build_extremizer_feature_map(2, chi=np.zeros(3))


class TestTrainExtremizerDiscrete:
    def test_maximize_concentrates_on_zeros(self):
        model = digital_identity_model(2)
        config = ExtremizeConfig(lr=0.02, epochs=150, seed=0)
        efm = train_extremizer_discrete(model, config)
        result = sample_extremizer(efm)
        assert result.distribution["00"] > 0.99
        assert efm.final_value >= efm.trajectory[0] - 1e-9

    def test_minimize_concentrates_on_ones(self):
        model = digital_identity_model(2)
        config = ExtremizeConfig(
            Direction.MINIMIZE, lr=0.02, epochs=300, seed=0
        )
        result = sample_extremizer(train_extremizer_discrete(model, config))
        assert result.top_candidates[0][0] == "11"
        assert result.distribution["11"] > 0.9

    def test_deterministic_for_seed(self):
        model = digital_identity_model(2)
        config = ExtremizeConfig(epochs=5, seed=7)
        first = train_extremizer_discrete(model, config)
        second = train_extremizer_discrete(model, config)
        assert np.array_equal(first.chi, second.chi)

    def test_theta_untouched(self):
        model = QuantumModel(
            build_digital_feature_map(2),
            build_hea(2, 1),
            theta=init_theta(4, make_rng(0)),
        ).freeze()
        before = model.theta.copy()
        train_extremizer_discrete(model, ExtremizeConfig(epochs=3, seed=0))
        assert np.array_equal(model.theta, before)

    def test_requires_frozen_model(self):
        model = QuantumModel(
            build_digital_feature_map(2), identity_ansatz(2)
        )
        with pytest.raises(FrozenModelError):
            train_extremizer_discrete(model, ExtremizeConfig())

    def test_rejects_continuous_feature_map(self):
        with pytest.raises(BindingError):
            train_extremizer_discrete(
                QuantumModelFactory().freeze(), ExtremizeConfig()
            )


class TestDiscreteOracleEquivalence:
    DRAWS = 50

    @pytest.mark.parametrize("n", [4, 6])
    def test_objective_is_weighted_average(self, n):
        rng = make_rng(100 + n)
        for _draw in range(self.DRAWS):
            model = QuantumModel(
                build_digital_feature_map(n),
                diagonal_ansatz(n),
                Observable(n, alpha=1.0, beta=0.5),
                rng.uniform(-math.pi, math.pi, n),
            ).freeze()
            efm = build_extremizer_feature_map(
                n, chi=rng.uniform(-math.pi, math.pi, 2 * n * n * n)
            )
            distribution = sample_extremizer(efm).distribution
            expected = sum(
                p * evaluate_model(model, [bits_to_int(bits)])
                for bits, p in distribution.items()
            )
            assert extremizer_objective(model, efm) == pytest.approx(
                expected, abs=1e-9
            )

    def test_identity_ansatz(self):
        model = digital_identity_model(3)
        efm = build_extremizer_feature_map(
            3, chi=make_rng(9).uniform(-2, 2, 54)
        )
        distribution = sample_extremizer(efm).distribution
        expected = sum(
            p * evaluate_model(model, [bits_to_int(bits)])
            for bits, p in distribution.items()
        )
        assert extremizer_objective(model, efm) == pytest.approx(
            expected, abs=1e-9
        )


class TestRanking:
    def test_lexicographic_tie_break(self):
        ranked = rank_candidates({"10": 0.25, "01": 0.25, "11": 0.5}, 3)
        assert ranked == [("11", 0.5), ("01", 0.25), ("10", 0.25)]

    def test_top_k_truncates(self):
        assert len(rank_candidates({"0": 0.5, "1": 0.5}, 1)) == 1


class TestTotalOptimalProbability:
    def test_sum_over_optimal_set(self):
        result = ExtremalResult(
            distribution={"0011": 0.4, "1100": 0.3, "0101": 0.3}
        )
        assert total_optimal_probability(
            result, {"0011", "1100"}
        ) == pytest.approx(0.7)

    def test_empty_optimal_set(self):
        result = ExtremalResult(distribution={"0": 1.0})
        assert total_optimal_probability(result, []) == 0.0

    def test_uniform_baseline(self):
        distribution = {format(i, "06b"): 1 / 64 for i in range(64)}
        result = ExtremalResult(distribution=distribution)
        assert total_optimal_probability(
            result, ["000111", "111000"]
        ) == pytest.approx(0.03125)


class TestMixedExtremizer:
    def test_zero_tree_selects_first_value(self):
        circuit = build_mixed_extremizer(3)
        marginal = n_marginal(circuit, [0.1, 0.0, 0.0, 0.0])
        assert marginal[1] == pytest.approx(1.0)
        assert marginal[2] + marginal[3] + marginal[4] == pytest.approx(0.0)

    def test_default_start_is_uniform(self):
        circuit = build_mixed_extremizer(3)
        half_pi = math.pi / 2
        marginal = n_marginal(circuit, [0.0, half_pi, half_pi, half_pi])
        assert list(marginal) == [1, 2, 3, 4]
        assert np.allclose(list(marginal.values()), 0.25)

    def test_tree_selects_last_value(self):
        circuit = build_mixed_extremizer(3)
        marginal = n_marginal(circuit, [0.0, math.pi, math.pi, 0.0])
        assert marginal[4] == pytest.approx(1.0)

    def test_gradient_matches_finite_difference(self):
        model = mixed_model(seed=2)
        circuit = build_mixed_extremizer(3)
        params = np.array([0.3, 0.7, 1.1, -0.4])
        _value, grad = mixed_objective_and_grad(model, circuit, params)
        h = 1e-5
        numeric = np.zeros(4)
        for k in range(4):
            step = np.zeros(4)
            step[k] = h
            numeric[k] = (
                mixed_objective(model, circuit, params + step)
                - mixed_objective(model, circuit, params - step)
            ) / (2 * h)
        assert np.allclose(grad, numeric, atol=1e-6)

    def test_layout(self):
        assert mixed_layout(mixed_model()) == 3

    @pytest.mark.parametrize(
        "feature_map",
        [build_chebyshev_tower(5), build_digital_feature_map(5)],
    )
    def test_layout_mismatch(self, feature_map):
        model = QuantumModel(feature_map, identity_ansatz(5)).freeze()
        with pytest.raises(BindingError):
            extremize_mixed(model, ExtremizeConfig())

    def test_short_run(self):
        model = mixed_model(seed=1)
        before = model.theta.copy()
        result = extremize_mixed(
            model, ExtremizeConfig(Direction.MINIMIZE, lr=0.01, epochs=5)
        )
        assert np.array_equal(model.theta, before)
        assert len(result.trajectory) == 5
        assert set(result.distribution) == {"1", "2", "3", "4"}
        assert sum(result.distribution.values()) == pytest.approx(1.0)
        assert result.inputs[0] == 0.0
        assert len(result.params) == 4

    def test_minimize_identity_model_picks_last_value(self):
        model = mixed_model(ansatz=identity_ansatz(5))
        config = ExtremizeConfig(Direction.MINIMIZE, lr=0.05, epochs=200)
        result = extremize_mixed(model, config)
        assert result.top_candidates[0][0] == "4"

    def test_wrong_start_size(self):
        with pytest.raises(BindingError):
            extremize_mixed(mixed_model(), ExtremizeConfig(x0=[0.0, 1.0]))
