"""Otimizadores ADAM e L-BFGS sobre vetores de parâmetros.

Os minimizadores recebem um ``objective(params) -> (loss, grad)`` e não
conhecem modelos; o app ``extremal`` reaproveita ``adam_step`` para
subir ou descer gradientes de entradas.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Deque, List, Optional, Tuple

import numpy as np

from apps.train.constants import TrainConstants
from tools.exceptions import ConfigError, TrainingError

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]


class OptimizerKind(str, Enum):
    ADAM = "adam"
    LBFGS = "lbfgs"


@dataclass(frozen=True)
class OptimizerConfig:
    kind: OptimizerKind = OptimizerKind.ADAM
    lr: float = 0.1
    epochs: int = 50
    beta1: float = TrainConstants.ADAM_BETA1
    beta2: float = TrainConstants.ADAM_BETA2
    eps: float = TrainConstants.ADAM_EPS
    history: int = TrainConstants.LBFGS_HISTORY

    def __post_init__(self):
        object.__setattr__(self, "kind", OptimizerKind(self.kind))
        if not math.isfinite(self.lr) or self.lr <= 0:
            raise ConfigError(
                f"Learning rate deve ser > 0, recebeu {self.lr}.", lr=self.lr
            )
        if self.epochs < 1:
            raise ConfigError(
                f"Número de épocas deve ser >= 1, recebeu {self.epochs}.",
                epochs=self.epochs,
            )
        if self.history < 0:
            raise ConfigError(
                "Histórico do L-BFGS não pode ser negativo.",
                history=self.history,
            )

    @classmethod
    def adam(cls, lr: float, epochs: int) -> "OptimizerConfig":
        return cls(OptimizerKind.ADAM, lr, epochs)

    @classmethod
    def lbfgs(
        cls,
        lr: float,
        epochs: int,
        history: int = TrainConstants.LBFGS_HISTORY,
    ) -> "OptimizerConfig":
        return cls(OptimizerKind.LBFGS, lr, epochs, history=history)

    def label(self) -> str:
        return f"{self.kind.value}(lr={self.lr}, epochs={self.epochs})"


@dataclass
class AdamState:
    """Momentos do ADAM; ``t`` conta os passos já dados."""

    lr: float
    beta1: float
    beta2: float
    eps: float
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def from_config(cls, config: OptimizerConfig, size: int) -> "AdamState":
        return cls(
            config.lr,
            config.beta1,
            config.beta2,
            config.eps,
            np.zeros(size),
            np.zeros(size),
        )


def check_finite(loss: float, grad: np.ndarray, epoch: int) -> None:
    if not math.isfinite(loss):
        raise TrainingError(f"Perda não finita na época {epoch}.", epoch)
    if not np.all(np.isfinite(grad)):
        raise TrainingError(f"Gradiente não finito na época {epoch}.", epoch)


def adam_step(
    state: AdamState, params: np.ndarray, gradient: np.ndarray
) -> np.ndarray:
    """Um passo de descida ADAM com correção de viés.

    ``state`` é atualizado no lugar; os parâmetros novos são devolvidos.
    Para subir o gradiente basta passar ``-gradient``.
    """
    gradient = np.asarray(gradient, dtype=float)
    if gradient.shape != state.m.shape:
        raise TrainingError(
            "Gradiente com shape diferente dos parâmetros.",
            state.t,
            expected=state.m.shape,
            received=gradient.shape,
        )
    if not np.all(np.isfinite(gradient)):
        raise TrainingError(
            f"Gradiente não finito na época {state.t}.", state.t
        )
    state.t += 1
    state.m = state.beta1 * state.m + (1 - state.beta1) * gradient
    state.v = state.beta2 * state.v + (1 - state.beta2) * gradient**2
    m_hat = state.m / (1 - state.beta1**state.t)
    v_hat = state.v / (1 - state.beta2**state.t)
    return params - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)


class LbfgsMemory:
    """Histórico de pares (s, y) e a recursão de dois laços."""

    def __init__(self, history: int):
        self.history = history
        self.pairs: Deque[Tuple[np.ndarray, np.ndarray, float]] = deque(
            maxlen=max(history, 1)
        )

    def push(self, step: np.ndarray, change: np.ndarray) -> bool:
        curvature = float(step @ change)
        if self.history == 0 or curvature <= (
            TrainConstants.LBFGS_CURVATURE_EPS
        ):
            return False
        self.pairs.append((step, change, 1.0 / curvature))
        return True

    def clear(self) -> None:
        self.pairs.clear()

    def direction(self, grad: np.ndarray) -> np.ndarray:
        """−H·grad, com H0 = γI e γ = s·y/y·y do par mais recente."""
        q = grad.copy()
        alphas = []
        for step, change, rho in reversed(self.pairs):
            alpha = rho * (step @ q)
            q = q - alpha * change
            alphas.append(alpha)
        if self.pairs:
            step, change, _rho = self.pairs[-1]
            q = q * (step @ change) / (change @ change)
        for (step, change, rho), alpha in zip(self.pairs, reversed(alphas)):
            beta = rho * (change @ q)
            q = q + step * (alpha - beta)
        return -q


@dataclass
class OptimizationResult:
    params: np.ndarray
    trajectory: List[float] = field(default_factory=list)
    final_loss: float = 0.0
    improved: bool = True


def minimize_adam(
    objective: Objective,
    params: np.ndarray,
    config: OptimizerConfig,
    value: Optional[Callable[[np.ndarray], float]] = None,
) -> OptimizationResult:
    """Roda ``config.epochs`` passos de ADAM.

    A trajetória guarda a perda no início de cada época; a perda final é
    avaliada depois do último passo.
    """
    state = AdamState.from_config(config, np.size(params))
    params = np.array(params, dtype=float)
    trajectory: List[float] = []
    for epoch in range(config.epochs):
        loss, grad = objective(params)
        check_finite(loss, grad, epoch)
        trajectory.append(loss)
        logger.debug(f"adam época {epoch}: perda {loss:.6e}")
        params = adam_step(state, params, grad)
    final_loss = value(params) if value else objective(params)[0]
    check_finite(final_loss, np.zeros(0), config.epochs)
    return OptimizationResult(
        params, trajectory, final_loss, final_loss <= trajectory[0]
    )


def armijo_step(
    objective: Objective,
    params: np.ndarray,
    loss: float,
    grad: np.ndarray,
    direction: np.ndarray,
    step: float,
) -> Optional[Tuple[np.ndarray, float, np.ndarray]]:
    """Backtracking a partir de ``step`` até a condição de Armijo.

    Candidatos com perda não finita contam como rejeitados. Devolve
    ``None`` se nenhum dos ``LBFGS_MAX_BACKTRACKS`` passos for aceito.
    """
    slope = float(grad @ direction)
    for _attempt in range(TrainConstants.LBFGS_MAX_BACKTRACKS):
        candidate = params + step * direction
        new_loss, new_grad = objective(candidate)
        sufficient = loss + TrainConstants.LBFGS_ARMIJO_C1 * step * slope
        if math.isfinite(new_loss) and new_loss <= sufficient:
            return candidate, new_loss, np.asarray(new_grad, dtype=float)
        step *= TrainConstants.LBFGS_BACKTRACK
    return None


def minimize_lbfgs(
    objective: Objective, params: np.ndarray, config: OptimizerConfig
) -> OptimizationResult:
    """L-BFGS com busca em linha de Armijo.

    Cada época tenta primeiro o passo ``lr`` na direção da recursão de
    dois laços e o reduz até haver decréscimo suficiente. Se a direção
    não for de descida a memória é descartada e a época usa −∇. Para
    quando o gradiente zera ou nenhum passo é aceito; como só passos que
    reduzem a perda são aceitos, os parâmetros devolvidos são os de menor
    perda vista.
    """
    memory = LbfgsMemory(config.history)
    params = np.array(params, dtype=float)
    trajectory: List[float] = []
    loss, grad = objective(params)
    check_finite(loss, grad, 0)
    for epoch in range(config.epochs):
        trajectory.append(loss)
        logger.debug(f"lbfgs época {epoch}: perda {loss:.6e}")
        if not np.any(grad):
            logger.info(f"Gradiente nulo; L-BFGS parado na época {epoch}.")
            break
        direction = memory.direction(grad)
        if float(grad @ direction) >= 0:
            memory.clear()
            direction = -grad
        accepted = armijo_step(
            objective, params, loss, grad, direction, config.lr
        )
        if accepted is None:
            logger.info(
                f"Nenhum passo com decréscimo suficiente; L-BFGS parado "
                f"na época {epoch}."
            )
            break
        candidate, new_loss, new_grad = accepted
        check_finite(new_loss, new_grad, epoch + 1)
        memory.push(candidate - params, new_grad - grad)
        params, loss, grad = candidate, new_loss, new_grad
    improved = loss <= trajectory[0]
    return OptimizationResult(params, trajectory, loss, improved)
