"""Extremização mista: x contínuo e n discreto otimizados juntos.

O circuito extremizador troca o feature map do modelo misto por:

- a mesma torre de Chebyshev nos qubits contínuos, dirigida por x;
- uma árvore de amplitudes reais nos 2 qubits digitais: RY(a) no
  primeiro, CRY(b) controlado em |1⟩ e CRY(c) controlado em |0⟩ (X antes
  e depois) no segundo.

São 4 parâmetros (x, a, b, c). x* sai direto do parâmetro x e a
distribuição de n vem da marginal dos 2 qubits digitais (n = índice + 1).
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from apps.circuit.feature_maps import (
    build_chebyshev_tower,
    build_mixed_feature_map,
)
from apps.circuit.ir import CircuitIR, Operation, ParamBinding
from apps.circuit.model import QuantumModel
from apps.diff.engine import op_derivatives
from apps.diff.gradients import feature_ops, variational_map
from apps.extremal.config import ExtremizeConfig
from apps.extremal.constants import ExtremalConstants
from apps.extremal.results import ExtremalResult, rank_candidates
from apps.sim.gates import GateKind
from apps.sim.statevector import (
    expectation_block,
    probabilities_block,
    run_circuit,
    zero_block,
)
from apps.train.optimizers import adam_step, check_finite
from tools.exceptions import BindingError

logger = logging.getLogger(__name__)

N_DISCRETE = ExtremalConstants.MIXED_DISCRETE_QUBITS


def mixed_layout(model: QuantumModel) -> int:
    """Número de qubits contínuos do modelo misto.

    Raises:
        BindingError: se o feature map não for torre + 2 qubits digitais.

    """
    n_cont = model.n_qubits - N_DISCRETE
    if n_cont >= 1 and model.n_features == 2:
        expected = build_mixed_feature_map(n_cont, N_DISCRETE)
        if expected.ops == model.feature_map.ops:
            return n_cont
    raise BindingError(
        "Layout de features incompatível com o extremizador misto.",
        n_qubits=model.n_qubits,
        n_features=model.n_features,
    )


def build_mixed_extremizer(n_cont: int) -> CircuitIR:
    """Torre em x (feature 0) + árvore RY/CRY com θ = (a, b, c)."""
    total = n_cont + N_DISCRETE
    tower = build_chebyshev_tower(n_cont, feature=0, n_total=total)
    first, second = n_cont, n_cont + 1
    tree = (
        Operation(GateKind.RY, (first,), ParamBinding.variational(0)),
        Operation(
            GateKind.CRY, (first, second), ParamBinding.variational(1)
        ),
        Operation(GateKind.X, (first,)),
        Operation(
            GateKind.CRY, (first, second), ParamBinding.variational(2)
        ),
        Operation(GateKind.X, (first,)),
    )
    return CircuitIR(total, tower.ops + tree, n_variational=3, n_features=1)


def _split(params: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    values = np.asarray(params, dtype=float)
    return values[:1], values[1:]


def n_marginal(
    circuit: CircuitIR, params: Sequence[float]
) -> Dict[int, float]:
    """Distribuição de n preparada pelo extremizador (sem o ansatz)."""
    x, tree = _split(params)
    block = run_circuit(
        circuit.slots, circuit.bind(x, tree), circuit.n_qubits
    )
    probs = probabilities_block(block)[0].reshape(-1, 2**N_DISCRETE)
    marginal = probs.sum(axis=0)
    return {index + 1: float(p) for index, p in enumerate(marginal)}


def mixed_objective_and_grad(
    model: QuantumModel, circuit: CircuitIR, params: np.ndarray
) -> Tuple[float, np.ndarray]:
    """Objetivo escalado e gradiente em (x, a, b, c)."""
    x, tree = _split(params)
    slots = circuit.slots + model.ansatz.slots
    angles = np.concatenate(
        [circuit.bind(x, tree), model.ansatz_angles()]
    )
    tower = feature_ops(circuit, 0)
    variational, onehot = variational_map(circuit)
    raw, derivs, _evaluations = op_derivatives(
        slots,
        angles,
        model.n_qubits,
        zero_block(model.n_qubits),
        tower + variational,
    )
    slopes = np.array(
        [
            circuit.ops[index].binding.feature_derivative(x)[0]
            for index in tower
        ]
    )
    grad = np.concatenate(
        [
            [derivs[0, : len(tower)] @ slopes],
            derivs[0, len(tower) :] @ onehot,
        ]
    )
    gain = model.observable.gain
    return float(model.observable.scale(raw[0])), gain * grad


def mixed_objective(
    model: QuantumModel, circuit: CircuitIR, params: np.ndarray
) -> float:
    x, tree = _split(params)
    slots = circuit.slots + model.ansatz.slots
    angles = np.concatenate(
        [circuit.bind(x, tree), model.ansatz_angles()]
    )
    block = run_circuit(slots, angles, model.n_qubits)
    raw = expectation_block(block, model.n_qubits)
    return float(model.observable.scale(raw[0]))


def _start(config: ExtremizeConfig, lo: float, hi: float) -> np.ndarray:
    start = ExtremalConstants.MIXED_START if config.x0 is None else config.x0
    params = np.array(start, dtype=float).reshape(-1)
    if params.size != 1 + 3:
        raise BindingError(
            "Extremizador misto espera x0 = [x, a, b, c].",
            received=params.size,
        )
    params[0] = np.clip(params[0], lo, hi)
    return params


def extremize_mixed(
    model: QuantumModel, config: ExtremizeConfig
) -> ExtremalResult:
    """ADAM conjunto em (x, a, b, c) com θ congelado.

    Returns:
        ExtremalResult: ``best_input`` = x*, ``distribution`` com chaves
            "1".."4" (valor de n) e ``top_candidates`` ordenados.

    """
    model.require_frozen()
    n_cont = mixed_layout(model)
    circuit = build_mixed_extremizer(n_cont)
    lo, hi = config.domain()
    params = _start(config, lo, hi)
    state = config.adam_state(params.size)
    sign = config.direction.sign
    trajectory: List[float] = []
    inputs: List[float] = []
    for epoch in range(config.epochs):
        value, grad = mixed_objective_and_grad(model, circuit, params)
        check_finite(value, grad, epoch)
        trajectory.append(value)
        inputs.append(float(params[0]))
        logger.debug(f"Extremizador misto época {epoch}: {value:.6e}")
        params = adam_step(state, params, -sign * grad)
        params[0] = np.clip(params[0], lo, hi)
    marginal = n_marginal(circuit, params)
    distribution = {str(n): p for n, p in marginal.items()}
    final = mixed_objective(model, circuit, params)
    logger.info(
        f"Extremizador misto: x* = {params[0]:.6f}, objetivo {final:.6e}."
    )
    return ExtremalResult(
        trajectory=trajectory,
        best_input=float(params[0]),
        best_value=final,
        inputs=inputs,
        distribution=distribution,
        top_candidates=rank_candidates(distribution, len(distribution)),
        params=[float(v) for v in params],
    )
