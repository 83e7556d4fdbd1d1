"""Conjuntos de treino, escala de alvos e especificação de EDOs."""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from apps.train.constants import TrainConstants
from tools.exceptions import DatasetError


@dataclass(frozen=True)
class TargetScaler:
    """Mapa afim min-max [low, high] -> [0, 1] e sua inversa."""

    low: float
    high: float

    def forward(self, values):
        return (np.asarray(values, dtype=float) - self.low) / (
            self.high - self.low
        )

    def inverse(self, values):
        return np.asarray(values, dtype=float) * (
            self.high - self.low
        ) + self.low

    def to_dict(self) -> dict:
        return {"low": self.low, "high": self.high}


@dataclass
class Dataset:
    """Pares (entrada, alvo) em forma matricial.

    ``inputs`` tem shape (B, n_features); ``targets`` tem shape (B,).
    """

    inputs: np.ndarray
    targets: np.ndarray
    scaling: Optional[TargetScaler] = None

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=float)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        targets = np.asarray(self.targets, dtype=float).reshape(-1)
        if inputs.shape[0] != targets.shape[0]:
            raise DatasetError(
                "Número de entradas e de alvos diferente.",
                inputs=inputs.shape[0],
                targets=targets.shape[0],
            )
        self.inputs = inputs
        self.targets = targets

    @classmethod
    def from_samples(
        cls, samples: Iterable[Tuple[Sequence[float], float]]
    ) -> "Dataset":
        pairs = list(samples)
        if not pairs:
            return cls(np.zeros((0, 1)), np.zeros(0))
        inputs = [np.atleast_1d(np.asarray(x, dtype=float)) for x, _ in pairs]
        return cls(np.vstack(inputs), [y for _, y in pairs])

    @property
    def samples(self) -> List[Tuple[Tuple[float, ...], float]]:
        return [
            (tuple(row), float(target))
            for row, target in zip(self.inputs, self.targets)
        ]

    def __len__(self) -> int:
        return self.targets.shape[0]

    def require_nonempty(self) -> None:
        if len(self) == 0:
            raise DatasetError("Conjunto de treino vazio.")

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs.tolist(),
            "targets": self.targets.tolist(),
            "scaling": self.scaling.to_dict() if self.scaling else None,
        }


def scale_targets(dataset: Dataset) -> Tuple[Dataset, TargetScaler]:
    """Escala os alvos para [0, 1] por min-max.

    Returns:
        tuple: (dataset escalado, escala usada para inverter).

    Raises:
        DatasetError: se todos os alvos forem iguais.

    """
    dataset.require_nonempty()
    low = float(dataset.targets.min())
    high = float(dataset.targets.max())
    if high == low:
        raise DatasetError(
            "Faixa de alvos degenerada: todos os valores são iguais.",
            value=low,
        )
    scaler = TargetScaler(low, high)
    scaled = Dataset(dataset.inputs, scaler.forward(dataset.targets), scaler)
    return scaled, scaler


@dataclass(frozen=True)
class OdeSpec:
    """EDO de primeira ordem f'(x) = g(x) com condição f(x0) = f0.

    ``rhs`` deve aceitar vetores numpy.
    """

    rhs: Callable[[np.ndarray], np.ndarray]
    boundary: Tuple[float, float]
    domain: Tuple[float, float] = (0.0, 1.0)
    collocation: int = TrainConstants.DEFAULT_COLLOCATION
    boundary_weight: float = TrainConstants.BOUNDARY_WEIGHT

    def __post_init__(self):
        lo, hi = self.domain
        if self.collocation < 1:
            raise DatasetError(
                "Grade de colocação vazia.", collocation=self.collocation
            )
        if not lo <= self.boundary[0] <= hi:
            raise DatasetError(
                f"Ponto de contorno {self.boundary[0]} fora do domínio "
                f"[{lo}, {hi}].",
                boundary=self.boundary[0],
            )

    def grid(self) -> np.ndarray:
        """Grade uniforme incluindo as extremidades."""
        lo, hi = self.domain
        return np.linspace(lo, hi, self.collocation)
