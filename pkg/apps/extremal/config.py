import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from apps.circuit.constants import CircuitConstants
from apps.problems.constants import Direction
from apps.train.optimizers import AdamState, OptimizerConfig
from tools.exceptions import ConfigError


@dataclass(frozen=True)
class ExtremizeConfig:
    """Parâmetros de uma extremização com θ congelado.

    ``x0`` é a entrada inicial (contínuo) ou os parâmetros iniciais do
    extremizador (misto: ``[x, a, b, c]``). ``bounds`` restringe x e é
    sempre intersectado com (−1+ε, 1−ε).
    """

    direction: Direction = Direction.MAXIMIZE
    lr: float = 0.1
    epochs: int = 100
    x0: Optional[Sequence[float]] = None
    seed: Optional[int] = None
    bounds: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        if not math.isfinite(self.lr) or self.lr <= 0:
            raise ConfigError(
                f"Learning rate deve ser > 0, recebeu {self.lr}.", lr=self.lr
            )
        if self.epochs < 1:
            raise ConfigError(
                f"Número de épocas deve ser >= 1, recebeu {self.epochs}.",
                epochs=self.epochs,
            )
        if self.bounds is not None and self.bounds[0] > self.bounds[1]:
            raise ConfigError(
                "Limites invertidos.", bounds=list(self.bounds)
            )

    def adam_state(self, size: int) -> AdamState:
        """Estado ADAM zerado com os momentos padrão do treino."""
        return AdamState.from_config(
            OptimizerConfig.adam(self.lr, self.epochs), size
        )

    def domain(self) -> Tuple[float, float]:
        eps = CircuitConstants.CLAMP_EPS
        lo, hi = -1.0 + eps, 1.0 - eps
        if self.bounds is not None:
            lo = max(lo, self.bounds[0])
            hi = min(hi, self.bounds[1])
        if lo > hi:
            raise ConfigError(
                "Limites fora do domínio (−1, 1).", bounds=list(self.bounds)
            )
        return lo, hi
