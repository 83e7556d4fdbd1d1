"""Modelo quântico: feature map + ansatz + magnetização total escalada.

A saída do modelo é ``alpha·⟨Σ_j Z_j⟩/(2N) + beta``. Com ``alpha = 1`` e
``beta = 0.5`` ela cai em [0, 1]; com ``alpha = 2N`` e ``beta = 0`` é a
própria magnetização.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from apps.circuit.constants import CircuitConstants
from apps.circuit.ir import CircuitIR
from apps.sim.statevector import expectation_block, run_circuit
from tools.exceptions import BindingError, FrozenModelError


@dataclass(frozen=True)
class Observable:
    """Magnetização total Σ_j Z_j com escala de saída (alpha, beta)."""

    n_qubits: int
    alpha: float = CircuitConstants.DEFAULT_ALPHA
    beta: float = CircuitConstants.DEFAULT_BETA

    def __post_init__(self):
        # Faixa aceita: [0, ∞). Os experimentos usam [1, 100]; alpha = 0
        # vale e dá o modelo constante beta.
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise BindingError(
                f"alpha deve ser finito e >= 0, recebeu {self.alpha}.",
                alpha=self.alpha,
            )

    @property
    def gain(self) -> float:
        """Fator multiplicativo alpha/(2N) aplicado ao valor bruto."""
        return self.alpha / (2 * self.n_qubits)

    def scale(self, raw):
        return self.gain * raw + self.beta


class QuantumModel:
    """Cost-QNN: ⟨F(x)|U_θ† M U_θ|F(x)⟩ escalado.

    Depois de ``freeze`` o vetor θ fica somente leitura: extremizadores
    leem θ mas nunca o alteram.
    """

    def __init__(
        self,
        feature_map: CircuitIR,
        ansatz: CircuitIR,
        observable: Optional[Observable] = None,
        theta: Optional[Sequence[float]] = None,
    ):
        if feature_map.n_variational:
            raise BindingError("O feature map não pode ter parâmetros θ.")
        if ansatz.n_features:
            raise BindingError("O ansatz não pode depender de features.")
        if feature_map.n_qubits != ansatz.n_qubits:
            raise BindingError(
                "Feature map e ansatz com registradores diferentes.",
                feature_map=feature_map.n_qubits,
                ansatz=ansatz.n_qubits,
            )
        self.feature_map = feature_map
        self.ansatz = ansatz
        self.observable = observable or Observable(feature_map.n_qubits)
        self._frozen = False
        self._theta = np.zeros(ansatz.n_variational)
        if theta is not None:
            self.set_theta(theta)

    @property
    def n_qubits(self) -> int:
        return self.feature_map.n_qubits

    @property
    def n_features(self) -> int:
        return self.feature_map.n_features

    @property
    def theta(self) -> np.ndarray:
        return self._theta

    @property
    def frozen(self) -> bool:
        return self._frozen

    def set_theta(self, theta: Sequence[float]) -> None:
        if self._frozen:
            raise FrozenModelError(
                "θ está congelado; o modelo é imutável."
            )
        values = np.array(theta, dtype=float).reshape(-1)
        if values.size != self.ansatz.n_variational:
            raise BindingError(
                f"Esperados {self.ansatz.n_variational} parâmetros θ, "
                f"recebidos {values.size}.",
                expected=self.ansatz.n_variational,
                received=values.size,
            )
        self._theta = values

    def freeze(self) -> "QuantumModel":
        self._theta = self._theta.copy()
        self._theta.flags.writeable = False
        self._frozen = True
        return self

    def require_frozen(self) -> None:
        if not self._frozen:
            raise FrozenModelError(
                "Extremização exige um modelo treinado e congelado."
            )

    def with_observable(self, observable: Observable) -> "QuantumModel":
        """Cópia não congelada com outra escala de saída."""
        return QuantumModel(
            self.feature_map, self.ansatz, observable, self._theta
        )

    def ansatz_angles(self) -> np.ndarray:
        return self.ansatz.bind((), self._theta)


def as_rows(model: QuantumModel, inputs) -> np.ndarray:
    """Normaliza entradas para uma matriz (B, n_features)."""
    rows = np.asarray(inputs, dtype=float)
    if rows.ndim == 1:
        rows = rows.reshape(-1, model.n_features)
    if rows.ndim != 2 or rows.shape[1] != model.n_features:
        raise BindingError(
            f"Esperadas {model.n_features} features por entrada.",
            expected=model.n_features,
            shape=rows.shape,
        )
    return rows


def feature_states(model: QuantumModel, rows: np.ndarray) -> np.ndarray:
    """Estados |F(x)⟩ de cada linha, bloco (B, 2^N)."""
    angles = model.feature_map.bind_batch(rows)
    return run_circuit(model.feature_map.slots, angles, model.n_qubits)


def raw_expectations(model: QuantumModel, block: np.ndarray) -> np.ndarray:
    """⟨M⟩ bruto após aplicar U_θ a um bloco de estados de entrada."""
    final = run_circuit(
        model.ansatz.slots, model.ansatz_angles(), model.n_qubits, block
    )
    return expectation_block(final, model.n_qubits)


def evaluate_batch(model: QuantumModel, inputs) -> np.ndarray:
    """Saída escalada do modelo para várias entradas."""
    rows = as_rows(model, inputs)
    raw = raw_expectations(model, feature_states(model, rows))
    return model.observable.scale(raw)


def evaluate_model(model: QuantumModel, features: Sequence[float]) -> float:
    """Saída escalada para uma entrada; função pura de (entrada, θ)."""
    values = np.asarray(features, dtype=float).reshape(-1)
    if values.size != model.n_features:
        raise BindingError(
            f"Esperadas {model.n_features} features, "
            f"recebidas {values.size}.",
            expected=model.n_features,
            received=values.size,
        )
    return float(evaluate_batch(model, values.reshape(1, -1))[0])
