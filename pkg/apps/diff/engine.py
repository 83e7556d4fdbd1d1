"""Avaliação em lote de circuitos deslocados (parameter shift).

Para obter ∂⟨M⟩/∂φ_k de várias operações de um mesmo circuito, cada
circuito deslocado U(φ_k ± s) precisa ser avaliado. Em vez de simular cada
um do zero, uma varredura faz:

1. passe direto do bloco de estados pelo circuito;
2. passe reverso desfazendo uma porta por vez (U_k†) enquanto o
   observável é levado para trás na imagem de Heisenberg
   (O_{k-1} = U_k† O_k U_k).

Na operação k, o valor do circuito deslocado é exatamente
⟨ψ_{k-1}| U_k(φ_k + s)† O_k U_k(φ_k + s) |ψ_{k-1}⟩. As portas depois da
operação deslocada precisam ter ângulos iguais em todas as linhas do
bloco; deslocamentos em features por linha são feitos pelo chamador,
expandindo o bloco de entrada.
"""

from typing import Dict, Sequence, Tuple

import numpy as np

from apps.diff.constants import DiffConstants
from apps.sim.gates import ROTATIONS, GateKind, inverse_angle
from apps.sim.statevector import (
    GateSlot,
    apply_matrix,
    expectation_block,
    magnetization,
    run_circuit,
    slot_matrix,
)
from tools.exceptions import ShiftRuleError

ShiftRule = Tuple[Tuple[float, float], ...]


def shift_rule(kind: GateKind) -> ShiftRule:
    """Pares (deslocamento, coeficiente) da regra de uma porta.

    Rotações: ∂f = [f(φ+π/2) − f(φ−π/2)]/2. CRY: regra de quatro termos
    com deslocamentos ±π/2 e ±3π/2.
    """
    half_pi = DiffConstants.ROTATION_SHIFT
    if kind in ROTATIONS:
        return ((half_pi, 0.5), (-half_pi, -0.5))
    if kind == GateKind.CRY:
        near = DiffConstants.CRY_NEAR
        far = DiffConstants.CRY_FAR
        return (
            (half_pi, near),
            (-half_pi, -near),
            (3 * half_pi, -far),
            (-3 * half_pi, far),
        )
    raise ShiftRuleError(
        f"Porta {kind.value} não tem regra de deslocamento.",
        kind=kind.value,
    )


def _expectation_with(psi: np.ndarray, observable: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("bi,bi->b", psi.conj(), psi @ observable.T))


def _heisenberg_step(
    observable: np.ndarray,
    dagger: np.ndarray,
    targets: Tuple[int, ...],
    n_qubits: int,
) -> np.ndarray:
    """U† O U a partir de U† (colunas de O tratadas como estados)."""
    left = apply_matrix(observable.T, dagger, targets, n_qubits).T
    return apply_matrix(left.conj(), dagger, targets, n_qubits).conj()


def shifted_expectations(
    slots: Sequence[GateSlot],
    angles: np.ndarray,
    n_qubits: int,
    initial: np.ndarray,
    shifts: Dict[int, Sequence[float]],
) -> Tuple[np.ndarray, Dict[Tuple[int, float], np.ndarray]]:
    """⟨M⟩ do circuito original e de cada circuito deslocado.

    Args:
        slots: Operações (tipo, alvos) do circuito.
        angles: (L,) ângulos compartilhados por todas as linhas.
        n_qubits: Tamanho do registrador.
        initial: Bloco (B, 2^n) de estados de entrada.
        shifts: operação -> deslocamentos a avaliar.

    Returns:
        tuple: (valores base (B,), {(operação, deslocamento): (B,)}).

    """
    angles = np.asarray(angles, dtype=float)
    block = run_circuit(slots, angles, n_qubits, initial)
    base = expectation_block(block, n_qubits)
    results: Dict[Tuple[int, float], np.ndarray] = {}
    if not shifts:
        return base, results

    observable = np.diag(magnetization(n_qubits)).astype(complex)
    first = min(shifts)
    for index in range(len(slots) - 1, first - 1, -1):
        kind, targets = slots[index]
        angle = float(angles[index])
        dagger = slot_matrix(kind, inverse_angle(kind, angle))
        block = apply_matrix(block, dagger, targets, n_qubits)
        for delta in shifts.get(index, ()):
            psi = apply_matrix(
                block, slot_matrix(kind, angle + delta), targets, n_qubits
            )
            results[(index, delta)] = _expectation_with(psi, observable)
        if index > first:
            observable = _heisenberg_step(
                observable, dagger, targets, n_qubits
            )
    return base, results


def op_derivatives(
    slots: Sequence[GateSlot],
    angles: np.ndarray,
    n_qubits: int,
    initial: np.ndarray,
    op_indices: Sequence[int],
) -> Tuple[np.ndarray, np.ndarray, int]:
    """∂⟨M⟩/∂φ_k para cada operação pedida, via parameter shift.

    Returns:
        tuple: (valores base (B,), derivadas (B, len(op_indices)),
            número de circuitos avaliados).

    """
    rules = {index: shift_rule(slots[index][0]) for index in op_indices}
    plan = {
        index: tuple(delta for delta, _coeff in rule)
        for index, rule in rules.items()
    }
    base, shifted = shifted_expectations(
        slots, angles, n_qubits, initial, plan
    )
    rows = initial.shape[0]
    derivs = np.zeros((rows, len(op_indices)))
    evaluations = 0
    for column, index in enumerate(op_indices):
        for delta, coeff in rules[index]:
            derivs[:, column] += coeff * shifted[(index, delta)]
            evaluations += rows
    return base, derivs, evaluations
