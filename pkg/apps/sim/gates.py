"""Conjunto de portas do simulador.

Convenções fixadas aqui e usadas em todo o projeto:

- RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]; as regras de
  deslocamento do app ``diff`` dependem dessa convenção de meio ângulo.
- Portas de dois qubits recebem ``targets=(controle, alvo)`` e suas
  matrizes 4x4 usam o controle como bit mais significativo.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from tools.exceptions import GateError


class GateKind(str, Enum):
    X = "X"
    H = "H"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CNOT = "CNOT"
    CRY = "CRY"


ROTATIONS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ})
PARAMETRIC = ROTATIONS | {GateKind.CRY}
TWO_QUBIT = frozenset({GateKind.CNOT, GateKind.CRY})

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def arity(kind: GateKind) -> int:
    return 2 if kind in TWO_QUBIT else 1


def gate_matrix(
    kind: GateKind, angle: Union[float, np.ndarray] = 0.0
) -> np.ndarray:
    """Matriz unitária de uma porta.

    Args:
        kind (GateKind): Tipo da porta.
        angle (float | numpy.ndarray): Ângulo em radianos. Um vetor de
            ângulos com shape (B,) produz uma pilha de matrizes (B, k, k),
            uma por linha do bloco simulado.

    Returns:
        numpy.ndarray: (k, k) para ângulo escalar ou porta constante,
            (B, k, k) para vetor de ângulos.

    """
    if kind == GateKind.X:
        return _X
    if kind == GateKind.H:
        return _H
    if kind == GateKind.CNOT:
        return _CNOT

    theta = np.asarray(angle, dtype=float)
    cos = np.cos(theta / 2)
    sin = np.sin(theta / 2)
    matrix = np.zeros(theta.shape + (2, 2), dtype=complex)
    if kind == GateKind.RX:
        matrix[..., 0, 0] = cos
        matrix[..., 0, 1] = -1j * sin
        matrix[..., 1, 0] = -1j * sin
        matrix[..., 1, 1] = cos
    elif kind in (GateKind.RY, GateKind.CRY):
        matrix[..., 0, 0] = cos
        matrix[..., 0, 1] = -sin
        matrix[..., 1, 0] = sin
        matrix[..., 1, 1] = cos
    elif kind == GateKind.RZ:
        matrix[..., 0, 0] = np.exp(-0.5j * theta)
        matrix[..., 1, 1] = np.exp(0.5j * theta)
    else:
        raise GateError(f"Tipo de porta desconhecido: {kind}.", kind=kind)

    if kind != GateKind.CRY:
        return matrix

    controlled = np.zeros(theta.shape + (4, 4), dtype=complex)
    controlled[..., 0, 0] = 1.0
    controlled[..., 1, 1] = 1.0
    controlled[..., 2:, 2:] = matrix
    return controlled


def inverse_angle(kind: GateKind, angle: float) -> float:
    """Ângulo da porta inversa (X, H e CNOT são auto-inversas)."""
    return -angle if kind in PARAMETRIC else angle


def validate_targets(
    kind: GateKind, targets: Tuple[int, ...], n_qubits: int
) -> None:
    if len(targets) != arity(kind):
        raise GateError(
            f"{kind.value} espera {arity(kind)} alvo(s), recebeu {targets}.",
            kind=kind.value,
            targets=targets,
        )
    if len(set(targets)) != len(targets):
        raise GateError(
            f"{kind.value} com controle igual ao alvo: {targets}.",
            kind=kind.value,
            targets=targets,
        )
    for target in targets:
        if not 0 <= target < n_qubits:
            raise GateError(
                f"Qubit {target} fora do registrador de {n_qubits} qubits.",
                kind=kind.value,
                targets=targets,
                n_qubits=n_qubits,
            )


@dataclass(frozen=True)
class Gate:
    """Porta concreta: tipo, qubits alvo (base 0) e ângulo."""

    kind: GateKind
    targets: Tuple[int, ...]
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "targets", tuple(self.targets))

    def matrix(self) -> np.ndarray:
        return gate_matrix(self.kind, self.angle)

    def inverse(self) -> "Gate":
        return Gate(
            self.kind, self.targets, inverse_angle(self.kind, self.angle)
        )
