"""Representação intermediária de circuitos parametrizados.

Cada operação carrega um ``ParamBinding`` que diz de onde vem o ângulo:

- ``CONSTANT``: ângulo fixo;
- ``FEATURE``: função de uma feature de entrada (identidade, torre de
  Chebyshev ``2j·arccos(x)`` ou bit de um inteiro codificado);
- ``VARIATIONAL``: componente ``θ[index]``.

``bind`` resolve tudo em um vetor de ângulos por operação, que é o que o
simulador consome.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from apps.circuit.constants import CircuitConstants
from apps.sim.gates import PARAMETRIC, GateKind, validate_targets
from apps.sim.statevector import GateSlot, check_capacity
from tools.exceptions import BindingError


class BindingKind(str, Enum):
    CONSTANT = "constant"
    FEATURE = "feature"
    VARIATIONAL = "variational"


class Transform(str, Enum):
    IDENTITY = "identity"
    CHEBYSHEV = "chebyshev"
    BIT = "bit"


def clamp_unit(values: np.ndarray) -> np.ndarray:
    eps = CircuitConstants.CLAMP_EPS
    return np.clip(values, -1.0 + eps, 1.0 - eps)


@dataclass(frozen=True)
class ParamBinding:
    kind: BindingKind = BindingKind.CONSTANT
    angle: float = 0.0
    feature: int = 0
    transform: Transform = Transform.IDENTITY
    # ordem j da torre de Chebyshev ou posição do bit (0 = MSB)
    order: int = 0
    width: int = 0
    theta: int = 0
    # torre de Chebyshev: arccos é aplicado a scale·x + shift
    scale: float = 1.0
    shift: float = 0.0

    @classmethod
    def constant(cls, angle: float = 0.0) -> "ParamBinding":
        return cls(BindingKind.CONSTANT, angle=angle)

    @classmethod
    def variational(cls, index: int) -> "ParamBinding":
        return cls(BindingKind.VARIATIONAL, theta=index)

    @classmethod
    def chebyshev(
        cls,
        feature: int,
        order: int,
        scale: float = 1.0,
        shift: float = 0.0,
    ) -> "ParamBinding":
        return cls(
            BindingKind.FEATURE,
            feature=feature,
            transform=Transform.CHEBYSHEV,
            order=order,
            scale=scale,
            shift=shift,
        )

    @classmethod
    def bit(cls, feature: int, position: int, width: int) -> "ParamBinding":
        return cls(
            BindingKind.FEATURE,
            feature=feature,
            transform=Transform.BIT,
            order=position,
            width=width,
        )

    @classmethod
    def identity(cls, feature: int) -> "ParamBinding":
        return cls(BindingKind.FEATURE, feature=feature)

    def encoded(self, values: np.ndarray) -> np.ndarray:
        """Valor que entra no arccos, antes do grampeamento."""
        return self.scale * np.asarray(values, dtype=float) + self.shift

    @property
    def differentiable(self) -> bool:
        return self.kind == BindingKind.FEATURE and (
            self.transform != Transform.BIT
        )

    def feature_angle(self, values: np.ndarray) -> np.ndarray:
        """Ângulo da operação para um vetor de valores da feature."""
        values = np.asarray(values, dtype=float)
        if self.transform == Transform.CHEBYSHEV:
            return 2 * self.order * np.arccos(clamp_unit(self.encoded(values)))
        if self.transform == Transform.BIT:
            integers = np.rint(values).astype(np.int64)
            if np.any(integers < 0) or np.any(integers >= 2**self.width):
                raise BindingError(
                    f"Valor discreto fora de [0, {2**self.width}).",
                    feature=self.feature,
                    width=self.width,
                )
            bits = (integers >> (self.width - 1 - self.order)) & 1
            return np.pi * bits
        return values

    def feature_derivative(self, values: np.ndarray) -> np.ndarray:
        """dφ/dx da transformação (valores já grampeados)."""
        values = np.asarray(values, dtype=float)
        if self.transform == Transform.CHEBYSHEV:
            clamped = clamp_unit(self.encoded(values))
            return -2 * self.order * self.scale / np.sqrt(1.0 - clamped**2)
        if self.transform == Transform.BIT:
            raise BindingError(
                "Feature discreta não é diferenciável.",
                feature=self.feature,
            )
        return np.ones_like(values)


@dataclass(frozen=True)
class Operation:
    kind: GateKind
    targets: Tuple[int, ...]
    binding: ParamBinding = field(default_factory=ParamBinding.constant)

    @property
    def slot(self) -> GateSlot:
        return (self.kind, self.targets)


@dataclass(frozen=True)
class CircuitIR:
    """Lista ordenada de operações com ligações de parâmetros."""

    n_qubits: int
    ops: Tuple[Operation, ...] = ()
    n_variational: int = 0
    n_features: int = 0

    def __post_init__(self):
        check_capacity(self.n_qubits)
        object.__setattr__(self, "ops", tuple(self.ops))
        used = set()
        for op in self.ops:
            validate_targets(op.kind, op.targets, self.n_qubits)
            binding = op.binding
            if binding.kind != BindingKind.CONSTANT and (
                op.kind not in PARAMETRIC
            ):
                raise BindingError(
                    f"{op.kind.value} não aceita ângulo ligado.",
                    kind=op.kind.value,
                )
            if binding.kind == BindingKind.VARIATIONAL:
                if not 0 <= binding.theta < self.n_variational:
                    raise BindingError(
                        f"Índice θ {binding.theta} fora de "
                        f"[0, {self.n_variational}).",
                        theta=binding.theta,
                    )
                used.add(binding.theta)
            if binding.kind == BindingKind.FEATURE and not (
                0 <= binding.feature < self.n_features
            ):
                raise BindingError(
                    f"Feature {binding.feature} fora de "
                    f"[0, {self.n_features}).",
                    feature=binding.feature,
                )
        if len(used) != self.n_variational:
            raise BindingError(
                "Parâmetros variacionais declarados e não usados.",
                declared=self.n_variational,
                used=len(used),
            )

    @property
    def slots(self) -> Tuple[GateSlot, ...]:
        return tuple(op.slot for op in self.ops)

    def indices_of(self, kind: BindingKind) -> List[int]:
        return [
            index
            for index, op in enumerate(self.ops)
            if op.binding.kind == kind
        ]

    def bind_batch(
        self, rows: np.ndarray, theta: Optional[Sequence[float]] = None
    ) -> np.ndarray:
        """Resolve os ângulos de todas as operações para várias entradas.

        Args:
            rows: (B, n_features) valores de features por linha.
            theta: (n_variational,) parâmetros variacionais.

        Returns:
            numpy.ndarray: (B, L) ângulos, L = número de operações.

        """
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != self.n_features:
            raise BindingError(
                f"Esperadas {self.n_features} features por entrada, "
                f"recebido shape {rows.shape}.",
                expected=self.n_features,
            )
        theta_values = self._check_theta(theta)
        angles = np.zeros((rows.shape[0], len(self.ops)))
        for index, op in enumerate(self.ops):
            binding = op.binding
            if binding.kind == BindingKind.CONSTANT:
                angles[:, index] = binding.angle
            elif binding.kind == BindingKind.VARIATIONAL:
                angles[:, index] = theta_values[binding.theta]
            else:
                angles[:, index] = binding.feature_angle(
                    rows[:, binding.feature]
                )
        return angles

    def bind(
        self,
        features: Sequence[float] = (),
        theta: Optional[Sequence[float]] = None,
    ) -> np.ndarray:
        """Versão de ``bind_batch`` para uma única entrada: (L,)."""
        row = np.asarray(features, dtype=float).reshape(1, -1)
        if row.shape[1] != self.n_features:
            raise BindingError(
                f"Esperadas {self.n_features} features, "
                f"recebidas {row.shape[1]}.",
                expected=self.n_features,
                received=row.shape[1],
            )
        return self.bind_batch(row, theta)[0]

    def compose(self, other: "CircuitIR") -> "CircuitIR":
        """Concatena ``other`` depois deste circuito.

        Os índices variacionais de ``other`` são deslocados para depois dos
        deste circuito; os índices de features são compartilhados.
        """
        if other.n_qubits != self.n_qubits:
            raise BindingError(
                "Circuitos com registradores diferentes.",
                left=self.n_qubits,
                right=other.n_qubits,
            )
        shifted = []
        for op in other.ops:
            binding = op.binding
            if binding.kind == BindingKind.VARIATIONAL:
                binding = ParamBinding.variational(
                    binding.theta + self.n_variational
                )
            shifted.append(Operation(op.kind, op.targets, binding))
        return CircuitIR(
            self.n_qubits,
            self.ops + tuple(shifted),
            self.n_variational + other.n_variational,
            max(self.n_features, other.n_features),
        )

    def _check_theta(self, theta: Optional[Sequence[float]]) -> np.ndarray:
        if theta is None:
            theta = ()
        values = np.asarray(theta, dtype=float).reshape(-1)
        if values.size != self.n_variational:
            raise BindingError(
                f"Esperados {self.n_variational} parâmetros θ, "
                f"recebidos {values.size}.",
                expected=self.n_variational,
                received=values.size,
            )
        return values
