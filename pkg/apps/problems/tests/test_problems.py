import math

import numpy as np
import pytest

from apps.problems import (
    Direction,
    MixedFunctionSpec,
    brute_force_optimum,
    chain_cost,
    gen_maxcut_clusters,
    gen_molecule,
    make_training_set,
    maxcut_cost,
    maxcut_from_points,
    mixed_f,
    molecule_energy,
    ode_analytic,
    ode_rhs,
    target_sin5x,
)
from apps.problems.constants import ProblemConstants
from apps.problems.instances import (
    chain_from_coefficients,
    chain_windows,
    molecule_from_tables,
)
from apps.problems.tests.factories import (
    CorrelationChainFactory,
    MaxCutInstanceFactory,
    MoleculeFactory,
)
from tools.exceptions import DatasetError, ProblemError
from tools.utils import all_bitstrings, complement, make_rng

HAND_POINTS = [(0, 0), (0, 1), (5, 0), (5, 1)]


class TestMaxCut:
    def test_hand_instance_optimum(self):
        instance = maxcut_from_points(HAND_POINTS)
        optimal, value = brute_force_optimum(instance)
        assert optimal == ["0011", "1100"]
        assert value == pytest.approx(10 + 2 * math.sqrt(26))

    def test_hand_instance_cost(self):
        instance = maxcut_from_points(HAND_POINTS)
        assert maxcut_cost(instance, "0000") == 0.0
        assert maxcut_cost(instance, "0101") == pytest.approx(
            2 + 2 * math.sqrt(26)
        )

    def test_weights_are_symmetric_distances(self):
        instance = MaxCutInstanceFactory()
        assert np.allclose(instance.weights, instance.weights.T)
        assert np.all(np.diag(instance.weights) == 0)
        assert np.all(instance.weights >= 0)

    def test_complement_symmetry(self):
        instance = MaxCutInstanceFactory()
        for bits in all_bitstrings(6):
            assert maxcut_cost(instance, bits) == pytest.approx(
                maxcut_cost(instance, complement(bits))
            )

    def test_vectorized_costs_match_scalar(self):
        instance = MaxCutInstanceFactory(n=4)
        costs = instance.costs()
        for index, bits in enumerate(all_bitstrings(4)):
            assert costs[index] == pytest.approx(maxcut_cost(instance, bits))

    def test_separated_clusters_optimum_is_bipartition(self):
        for seed in range(50):
            instance = gen_maxcut_clusters(6, 5.0, make_rng(seed))
            optimal, _value = brute_force_optimum(instance)
            assert optimal == ["000111", "111000"]

    def test_same_seed_same_instance(self):
        first = gen_maxcut_clusters(6, 5.0, make_rng(3))
        second = gen_maxcut_clusters(6, 5.0, make_rng(3))
        assert np.array_equal(first.points, second.points)

    @pytest.mark.parametrize("n", [3, 5, 2])
    def test_rejects_bad_size(self, n):
        with pytest.raises(ProblemError):
            gen_maxcut_clusters(n, 5.0, make_rng(0))

    def test_length_mismatch(self):
        with pytest.raises(ProblemError):
            maxcut_cost(maxcut_from_points(HAND_POINTS), "010")


class TestCorrelationChain:
    def test_zero_coefficients(self):
        count = len(list(chain_windows(5, 2)))
        instance = chain_from_coefficients(5, 2, np.zeros(count))
        assert all(chain_cost(instance, b) == 0 for b in all_bitstrings(5))
        optimal, value = brute_force_optimum(instance)
        assert len(optimal) == 32
        assert value == 0.0

    def test_single_linear_term(self):
        count = len(list(chain_windows(4, 2)))
        weights = np.zeros(count)
        weights[0] = 1.0
        instance = chain_from_coefficients(4, 2, weights)
        assert chain_cost(instance, "0000") == 1.0
        assert chain_cost(instance, "1000") == -1.0

    def test_windows_are_contiguous(self):
        instance = CorrelationChainFactory()
        for window, _weight in instance.terms:
            assert list(window) == list(
                range(window[0], window[0] + len(window))
            )
        assert max(len(window) for window, _ in instance.terms) == 3

    def test_random_instance_has_optimum(self):
        instance = CorrelationChainFactory(seed=12)
        optimal, value = brute_force_optimum(instance)
        assert optimal
        for bits in all_bitstrings(6):
            assert chain_cost(instance, bits) <= value + 1e-9

    def test_invalid_order(self):
        with pytest.raises(ProblemError):
            CorrelationChainFactory(max_order=4)


class TestMolecule:
    def test_zero_tables(self):
        instance = molecule_from_tables(np.zeros((5, 2)), np.zeros((4, 2, 2)))
        assert all(
            molecule_energy(instance, bits) == 0
            for bits in all_bitstrings(5)
        )

    def test_quadratic_tables_are_symmetric(self):
        instance = MoleculeFactory()
        assert np.allclose(
            instance.quadratic, instance.quadratic.transpose(0, 2, 1)
        )

    def test_energy_formula(self):
        instance = MoleculeFactory(seed=4)
        bits = "10110"
        values = [int(b) for b in bits]
        expected = sum(instance.linear[i, values[i]] for i in range(5))
        expected += sum(
            instance.quadratic[i, values[i], values[i + 1]] for i in range(4)
        )
        assert molecule_energy(instance, bits) == pytest.approx(expected)

    def test_minimum_matches_enumeration(self):
        instance = MoleculeFactory(seed=9)
        optimal, value = brute_force_optimum(instance)
        energies = {b: molecule_energy(instance, b) for b in all_bitstrings(5)}
        assert value == pytest.approx(min(energies.values()))
        assert energies[optimal[0]] == pytest.approx(value)
        assert instance.default_direction == Direction.MINIMIZE

    def test_same_seed_same_tables(self):
        first = gen_molecule(make_rng(2))
        second = gen_molecule(make_rng(2))
        assert np.array_equal(first.linear, second.linear)
        assert np.array_equal(first.quadratic, second.quadratic)

    def test_wrong_length(self):
        with pytest.raises(ProblemError):
            molecule_energy(MoleculeFactory(), "0101")


class TestFunctions:
    def test_mixed_minimum_value(self):
        assert mixed_f(0.25, 3) == pytest.approx(-0.6)

    def test_mixed_grid_optimum(self):
        x, n, value = MixedFunctionSpec().grid_optimum()
        assert x == pytest.approx(0.25, abs=1e-9)
        assert n == 3
        assert value == pytest.approx(-0.6)

    @pytest.mark.parametrize("n", [0, 5])
    def test_mixed_branch_out_of_range(self, n):
        with pytest.raises(ProblemError):
            mixed_f(0.1, n)

    def test_ode_values(self):
        assert ode_rhs(0.0) == pytest.approx(4.25)
        assert ode_analytic(0.0) == pytest.approx(0.0)
        assert ode_rhs(0.0) ** 2 == pytest.approx(18.0625)

    def test_ode_analytic_solves_rhs(self):
        h = 1e-6
        xs = np.linspace(0.0, 1.0, 1001)
        derivative = (ode_analytic(xs + h) - ode_analytic(xs - h)) / (2 * h)
        assert np.max(np.abs(derivative - ode_rhs(xs))) < 1e-8


class TestOracles:
    def test_optimum_dominates_every_bitstring(self):
        for seed in range(5):
            instance = MaxCutInstanceFactory(seed=seed)
            _optimal, value = brute_force_optimum(instance)
            assert np.all(instance.costs() <= value + 1e-9)

    def test_direction_override(self):
        instance = maxcut_from_points(HAND_POINTS)
        optimal, value = brute_force_optimum(instance, Direction.MINIMIZE)
        assert optimal == ["0000", "1111"]
        assert value == 0.0

    def test_size_guard(self, mocker):
        instance = mocker.Mock(n_bits=21)
        with pytest.raises(ProblemError):
            brute_force_optimum(instance)


class TestTrainingSets:
    def test_full_space(self):
        dataset = make_training_set(MaxCutInstanceFactory(), 64, make_rng(0))
        assert sorted(dataset.inputs[:, 0].astype(int)) == list(range(64))
        assert dataset.targets.min() == 0.0
        assert dataset.targets.max() == 1.0

    def test_two_samples_are_distinct(self):
        instance = MaxCutInstanceFactory(seed=1)
        dataset = make_training_set(instance, 2, make_rng(5), scale=False)
        assert len(set(dataset.inputs[:, 0])) == 2

    def test_too_large(self):
        with pytest.raises(DatasetError):
            make_training_set(MaxCutInstanceFactory(), 65, make_rng(0))

    def test_sin_window_is_excluded(self):
        center = ProblemConstants.SIN5X_ARGMAX
        dataset = make_training_set(
            target_sin5x, 20, exclusion=(center, 0.1)
        )
        xs = dataset.inputs[:, 0]
        assert len(dataset) == 20
        assert np.all(np.abs(xs - center) >= 0.1 - 1e-12)
        assert np.allclose(dataset.targets, np.sin(5 * xs))

    def test_mixed_set(self):
        dataset = make_training_set(MixedFunctionSpec(), 21, scale=False)
        assert len(dataset) == 84
        assert set(dataset.inputs[:, 1]) == {0.0, 1.0, 2.0, 3.0}
        x, n_index = dataset.inputs[30]
        assert dataset.targets[30] == pytest.approx(
            mixed_f(x, int(n_index) + 1)
        )
