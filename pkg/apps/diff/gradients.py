"""Gradientes do modelo por parameter shift.

Todas as funções têm uma versão em lote (``*_batch``), usada pelos
treinos, e uma versão de entrada única que devolve ``GradientReport``.
Os valores já saem na escala do modelo: multiplicados por
``observable.gain`` (alpha/2N). ``beta`` não afeta derivadas.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from apps.circuit.constants import CircuitConstants
from apps.circuit.ir import BindingKind, CircuitIR, ParamBinding, Transform
from apps.circuit.model import (
    QuantumModel,
    as_rows,
    feature_states,
    raw_expectations,
)
from apps.diff.engine import op_derivatives, shift_rule
from apps.sim.statevector import run_circuit
from tools.exceptions import BindingError

logger = logging.getLogger(__name__)


@dataclass
class GradientReport:
    """Gradiente de uma avaliação e quantos circuitos foram executados."""

    values: np.ndarray
    evaluations: int
    clamped: bool = False


def variational_map(circuit: CircuitIR) -> Tuple[List[int], np.ndarray]:
    """Operações variacionais e a matriz (ops, P) que soma cada uma no
    seu θ (um mesmo θ pode aparecer em várias portas)."""
    op_indices = circuit.indices_of(BindingKind.VARIATIONAL)
    onehot = np.zeros((len(op_indices), circuit.n_variational))
    for row, index in enumerate(op_indices):
        onehot[row, circuit.ops[index].binding.theta] = 1.0
    return op_indices, onehot


def feature_ops(circuit: CircuitIR, feature: int) -> List[int]:
    """Operações do feature map ligadas de forma contínua a ``feature``."""
    indices = [
        index
        for index, op in enumerate(circuit.ops)
        if op.binding.kind == BindingKind.FEATURE
        and op.binding.feature == feature
    ]
    if not indices:
        raise BindingError(
            f"Nenhuma porta ligada à feature {feature}.", feature=feature
        )
    for index in indices:
        if circuit.ops[index].binding.transform == Transform.BIT:
            raise BindingError(
                f"Feature {feature} é discreta e não tem derivada.",
                feature=feature,
            )
    return indices


def out_of_domain(
    values: np.ndarray, binding: Optional[ParamBinding] = None
) -> np.ndarray:
    """Entradas que o grampeamento em (−1+ε, 1−ε) altera, já na escala
    do ``binding`` quando ele é dado."""
    eps = CircuitConstants.CLAMP_EPS
    if binding is not None:
        values = binding.encoded(values)
    return np.abs(np.asarray(values, dtype=float)) > 1.0 - eps


def feature_binding(circuit: CircuitIR, feature: int) -> ParamBinding:
    return circuit.ops[feature_ops(circuit, feature)[0]].binding


def theta_jacobian_batch(
    model: QuantumModel, inputs
) -> Tuple[np.ndarray, np.ndarray, int]:
    """Saída escalada e ∂f/∂θ para cada linha.

    Returns:
        tuple: (f (B,), jacobiano (B, P), circuitos avaliados).

    """
    rows = as_rows(model, inputs)
    block = feature_states(model, rows)
    op_indices, onehot = variational_map(model.ansatz)
    raw, derivs, evaluations = op_derivatives(
        model.ansatz.slots,
        model.ansatz_angles(),
        model.n_qubits,
        block,
        op_indices,
    )
    gain = model.observable.gain
    values = model.observable.scale(raw)
    return values, gain * (derivs @ onehot), evaluations


def grad_theta(model: QuantumModel, features) -> GradientReport:
    """∂f/∂θ_k para uma entrada.

    Example:
        Um qubit com RY(θ) sobre |0⟩ dá ⟨Z⟩ = cos θ; em θ = π/3 o
        gradiente bruto é −sin(π/3).

    """
    rows = as_rows(model, np.asarray(features, dtype=float).reshape(1, -1))
    _values, jacobian, evaluations = theta_jacobian_batch(model, rows)
    return GradientReport(jacobian[0], evaluations)


def _shifted_feature_block(
    model: QuantumModel, rows: np.ndarray, feature: int
) -> Tuple[np.ndarray, List[Tuple[int, float]], np.ndarray]:
    """Estados do feature map com cada porta de ``feature`` deslocada.

    Returns:
        tuple: (bloco (T·B, 2^N) com T termos empilhados em ordem,
            termos [(posição da porta, coeficiente)],
            dφ_j/dx (J, B)).

    """
    circuit = model.feature_map
    indices = feature_ops(circuit, feature)
    angles = circuit.bind_batch(rows)
    values = rows[:, feature]
    stacked = []
    terms: List[Tuple[int, float]] = []
    slopes = np.zeros((len(indices), rows.shape[0]))
    for position, index in enumerate(indices):
        op = circuit.ops[index]
        slopes[position] = op.binding.feature_derivative(values)
        for delta, coeff in shift_rule(op.kind):
            shifted = angles.copy()
            shifted[:, index] += delta
            stacked.append(shifted)
            terms.append((position, coeff))
    block = run_circuit(
        circuit.slots, np.concatenate(stacked), model.n_qubits
    )
    return block, terms, slopes


def _collapse_terms(
    terms: Sequence[Tuple[int, float]],
    values: np.ndarray,
    n_positions: int,
) -> np.ndarray:
    """Combina avaliações deslocadas (T, B, ...) em ∂/∂φ_j (J, B, ...)."""
    out = np.zeros((n_positions,) + values.shape[1:])
    for term, (position, coeff) in enumerate(terms):
        out[position] += coeff * values[term]
    return out


def dfdx_batch(
    model: QuantumModel, inputs, feature: int = 0
) -> Tuple[np.ndarray, np.ndarray, int]:
    """∂f/∂x pela regra da cadeia sobre as portas da torre de Chebyshev.

    Returns:
        tuple: (df/dx (B,), máscara de entradas grampeadas (B,),
            circuitos avaliados).

    """
    rows = as_rows(model, inputs)
    block, terms, slopes = _shifted_feature_block(model, rows, feature)
    batch = rows.shape[0]
    raw = raw_expectations(model, block).reshape(len(terms), batch)
    per_gate = _collapse_terms(terms, raw, slopes.shape[0])
    values = model.observable.gain * np.sum(per_gate * slopes, axis=0)
    clamped = out_of_domain(
        rows[:, feature], feature_binding(model.feature_map, feature)
    )
    return values, clamped, len(terms) * batch


def _as_single_row(model: QuantumModel, x) -> np.ndarray:
    values = np.asarray(x, dtype=float).reshape(1, -1)
    return as_rows(model, values)


def grad_x(model: QuantumModel, x, feature: int = 0) -> GradientReport:
    """df/dx em um ponto. ``x`` pode ser escalar (modelo de uma feature)
    ou o vetor completo de features."""
    rows = _as_single_row(model, x)
    values, clamped, evaluations = dfdx_batch(model, rows, feature)
    if clamped[0]:
        logger.warning(
            f"Entrada {rows[0, feature]} fora de (−1, 1); derivada "
            "avaliada no ponto grampeado."
        )
    return GradientReport(values, evaluations, bool(clamped[0]))


def dfdx_theta_jacobian_batch(
    model: QuantumModel, inputs, feature: int = 0
) -> Tuple[np.ndarray, np.ndarray, int]:
    """df/dx e ∂(df/dx)/∂θ_k por shift aninhado.

    Para cada porta φ_j da feature e cada θ_k, o valor misto é
    ¼[E(++) − E(+−) − E(−+) + E(−−)] (regras de rotação), ou seja,
    4 circuitos por par (θ_k, φ_j) por linha.

    Returns:
        tuple: (df/dx (B,), jacobiano (B, P), circuitos avaliados).

    """
    rows = as_rows(model, inputs)
    batch = rows.shape[0]
    block, terms, slopes = _shifted_feature_block(model, rows, feature)
    op_indices, onehot = variational_map(model.ansatz)
    raw, derivs, evaluations = op_derivatives(
        model.ansatz.slots,
        model.ansatz_angles(),
        model.n_qubits,
        block,
        op_indices,
    )
    n_positions = slopes.shape[0]
    gain = model.observable.gain
    per_gate = _collapse_terms(
        terms, raw.reshape(len(terms), batch), n_positions
    )
    dfdx = gain * np.sum(per_gate * slopes, axis=0)
    mixed = _collapse_terms(
        terms,
        (derivs @ onehot).reshape(len(terms), batch, -1),
        n_positions,
    )
    jacobian = gain * np.einsum("jbp,jb->bp", mixed, slopes)
    return dfdx, jacobian, evaluations


def grad_theta_of_dfdx(
    model: QuantumModel, x, feature: int = 0
) -> GradientReport:
    """∂/∂θ_k [df/dx](x) para um ponto."""
    rows = _as_single_row(model, x)
    _dfdx, jacobian, evaluations = dfdx_theta_jacobian_batch(
        model, rows, feature
    )
    binding = feature_binding(model.feature_map, feature)
    clamped = bool(out_of_domain(rows[:, feature], binding)[0])
    return GradientReport(jacobian[0], evaluations, clamped)
