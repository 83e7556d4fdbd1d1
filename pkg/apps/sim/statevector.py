"""Motor de vetor de estado denso.

Ordenação da base: o qubit 0 é o bit mais significativo do índice, ou
seja, a amplitude de |q0 q1 ... q_{n-1}⟩ fica em ``int("q0q1...", 2)``.

O motor trabalha sobre blocos ``(B, 2^n)``: cada linha é um estado
independente e cada porta pode ter um ângulo por linha. As operações de
estado único (``apply_gate``, ``expectation_z_sum`` ...) são casos B=1.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from apps.sim.constants import SimConstants
from apps.sim.gates import (
    PARAMETRIC,
    Gate,
    GateKind,
    gate_matrix,
    validate_targets,
)
from tools.exceptions import CapacityError, QELError
from tools.utils import bit_matrix, int_to_bits

# (tipo, alvos) de uma operação já resolvida; ângulos ficam à parte
GateSlot = Tuple[GateKind, Tuple[int, ...]]


@dataclass
class StateVector:
    """Estado puro de ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise CapacityError(
                f"Vetor com {self.amplitudes.shape} amplitudes não "
                f"representa {self.n_qubits} qubits.",
                n_qubits=self.n_qubits,
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def as_block(self) -> np.ndarray:
        return self.amplitudes[None, :]


def check_capacity(n_qubits: int) -> int:
    if not SimConstants.MIN_QUBITS <= n_qubits <= SimConstants.MAX_QUBITS:
        raise CapacityError(
            f"Número de qubits {n_qubits} fora de "
            f"[{SimConstants.MIN_QUBITS}, {SimConstants.MAX_QUBITS}].",
            n_qubits=n_qubits,
        )
    return n_qubits


def zero_block(n_qubits: int, rows: int = 1) -> np.ndarray:
    block = np.zeros((rows, 2**n_qubits), dtype=complex)
    block[:, 0] = 1.0
    return block


def init_zero(n_qubits: int) -> StateVector:
    """Estado |0...0⟩."""
    check_capacity(n_qubits)
    return StateVector(n_qubits, zero_block(n_qubits)[0])


def apply_matrix(
    block: np.ndarray,
    matrix: np.ndarray,
    targets: Tuple[int, ...],
    n_qubits: int,
) -> np.ndarray:
    """Aplica uma matriz (k, k) ou uma pilha (B, k, k) aos qubits alvo.

    Os eixos alvo são movidos para o fim do tensor, a matriz age no
    subespaço de dimensão 2^k e os eixos voltam ao lugar. Retorna um novo
    bloco; ``block`` não é alterado.
    """
    rows = block.shape[0]
    k = len(targets)
    tensor = block.reshape((rows,) + (2,) * n_qubits)
    source = [target + 1 for target in targets]
    tail = list(range(n_qubits + 1 - k, n_qubits + 1))
    moved = np.moveaxis(tensor, source, tail)
    flat = moved.reshape(rows, -1, 2**k)
    if matrix.ndim == 2:
        updated = flat @ matrix.T
    else:
        updated = np.einsum("bij,brj->bri", matrix, flat)
    restored = np.moveaxis(updated.reshape(moved.shape), tail, source)
    return restored.reshape(rows, -1)


def slot_matrix(kind: GateKind, angles: np.ndarray) -> np.ndarray:
    """Matriz de uma operação para um vetor de ângulos por linha.

    Quando todas as linhas compartilham o ângulo, devolve uma única
    matriz (k, k).
    """
    if kind not in PARAMETRIC:
        return gate_matrix(kind)
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    if angles.size == 1 or np.all(angles == angles[0]):
        return gate_matrix(kind, float(angles[0]))
    return gate_matrix(kind, angles)


def apply_slot(
    block: np.ndarray,
    slot: GateSlot,
    angles: np.ndarray,
    n_qubits: int,
) -> np.ndarray:
    kind, targets = slot
    return apply_matrix(block, slot_matrix(kind, angles), targets, n_qubits)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Aplica uma porta e retorna o novo estado (a norma é preservada)."""
    validate_targets(gate.kind, gate.targets, state.n_qubits)
    block = apply_matrix(
        state.as_block(), gate.matrix(), gate.targets, state.n_qubits
    )
    return StateVector(state.n_qubits, block[0])


def run_circuit(
    slots: Sequence[GateSlot],
    angles: np.ndarray,
    n_qubits: int,
    initial: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Executa uma sequência de portas sobre um bloco de estados.

    Args:
        slots: Sequência de (tipo, alvos).
        angles: (L,) ângulos compartilhados ou (B, L) um por linha.
        n_qubits: Tamanho do registrador.
        initial: Bloco inicial (B, 2^n). Padrão: |0...0⟩ em cada linha.

    Returns:
        numpy.ndarray: Bloco final (B, 2^n).

    """
    angles = np.asarray(angles, dtype=float)
    rows = angles.shape[0] if angles.ndim == 2 else 1
    block = zero_block(n_qubits, rows) if initial is None else initial
    if angles.ndim == 2 and block.shape[0] != rows:
        raise QELError(
            "Bloco inicial e matriz de ângulos com número de linhas "
            "diferente.",
            rows=block.shape[0],
            angle_rows=rows,
        )
    for index, slot in enumerate(slots):
        column = angles[:, index] if angles.ndim == 2 else angles[index]
        block = apply_slot(block, slot, column, n_qubits)
    return block


@lru_cache(maxsize=None)
def magnetization(n_qubits: int) -> np.ndarray:
    """Autovalores de Σ_j Z_j na base: (nº de zeros − nº de uns)."""
    values = n_qubits - 2 * bit_matrix(n_qubits).sum(axis=1)
    values = values.astype(float)
    values.flags.writeable = False
    return values


def probabilities_block(block: np.ndarray) -> np.ndarray:
    return np.abs(block) ** 2


def expectation_block(block: np.ndarray, n_qubits: int) -> np.ndarray:
    """⟨Σ_j Z_j⟩ de cada linha do bloco."""
    return probabilities_block(block) @ magnetization(n_qubits)


def expectation_z_sum(state: StateVector) -> float:
    """Magnetização total ⟨Σ_j Z_j⟩, com Z|0⟩ = +|0⟩."""
    return float(expectation_block(state.as_block(), state.n_qubits)[0])


def probabilities(state: StateVector) -> np.ndarray:
    """Distribuição exata da medida na base Z."""
    return probabilities_block(state.as_block())[0]


def sample(
    state: StateVector, shots: int, rng: np.random.Generator
) -> Dict[str, int]:
    """Amostra ``shots`` medidas na base Z.

    Returns:
        dict: bitstring -> contagem, só com contagens positivas, em ordem
            lexicográfica. A soma das contagens é ``shots``.

    """
    if shots < 1:
        raise QELError(
            f"Número de shots deve ser >= 1, recebeu {shots}.", shots=shots
        )
    probs = probabilities(state)
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    return {
        int_to_bits(index, state.n_qubits): int(count)
        for index, count in enumerate(counts)
        if count > 0
    }
