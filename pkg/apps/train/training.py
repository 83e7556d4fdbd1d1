"""Laço de treino: ajusta θ e congela o modelo."""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from apps.circuit.model import QuantumModel
from apps.train.datasets import Dataset, OdeSpec
from apps.train.losses import (
    mse_loss,
    mse_loss_and_grad,
    ode_residual_loss,
    ode_residual_loss_and_grad,
)
from apps.train.optimizers import (
    Objective,
    OptimizationResult,
    OptimizerConfig,
    OptimizerKind,
    minimize_adam,
    minimize_lbfgs,
)
from tools.exceptions import ConfigError, DatasetError, FrozenModelError
from tools.utils import timed

logger = logging.getLogger(__name__)

LossSpec = Union[Dataset, OdeSpec]


@dataclass
class TrainReport:
    loss_trajectory: List[float]
    final_theta: np.ndarray
    wall_time: float
    final_loss: float
    improved: bool = True
    stages: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Representação serializável; ``wall_time`` fica só nos logs."""
        return {
            "loss_trajectory": [float(v) for v in self.loss_trajectory],
            "final_loss": float(self.final_loss),
            "final_theta": [float(v) for v in self.final_theta],
            "improved": self.improved,
            "stages": list(self.stages),
        }


def loss_value(model: QuantumModel, loss: LossSpec) -> float:
    if isinstance(loss, Dataset):
        return mse_loss(model, loss)
    if isinstance(loss, OdeSpec):
        return ode_residual_loss(model, loss)
    raise DatasetError(f"Tipo de perda desconhecido: {type(loss).__name__}.")


def model_objective(model: QuantumModel, loss: LossSpec) -> Objective:
    """Objetivo (perda, gradiente) que grava θ no modelo a cada chamada."""
    if isinstance(loss, Dataset):
        evaluate = mse_loss_and_grad
    elif isinstance(loss, OdeSpec):
        evaluate = ode_residual_loss_and_grad
    else:
        raise DatasetError(
            f"Tipo de perda desconhecido: {type(loss).__name__}."
        )

    def objective(theta: np.ndarray) -> Tuple[float, np.ndarray]:
        model.set_theta(theta)
        return evaluate(model, loss)

    return objective


def run_stage(
    model: QuantumModel, loss: LossSpec, config: OptimizerConfig
) -> OptimizationResult:
    """Roda um estágio de otimização e deixa θ final no modelo."""
    if model.frozen:
        raise FrozenModelError(
            "Não é possível treinar um modelo congelado."
        )
    objective = model_objective(model, loss)
    if config.kind == OptimizerKind.LBFGS:
        result = minimize_lbfgs(objective, model.theta, config)
    else:
        result = minimize_adam(
            objective,
            model.theta,
            config,
            value=lambda theta: _value_at(model, loss, theta),
        )
    model.set_theta(result.params)
    return result


def _value_at(model: QuantumModel, loss: LossSpec, theta) -> float:
    model.set_theta(theta)
    return loss_value(model, loss)


def lbfgs_run(
    model: QuantumModel, loss: LossSpec, config: OptimizerConfig
) -> TrainReport:
    """Um estágio L-BFGS isolado; o modelo não é congelado."""
    if config.kind != OptimizerKind.LBFGS:
        raise ConfigError(
            "lbfgs_run exige uma configuração L-BFGS.",
            kind=config.kind.value,
        )
    with timed("lbfgs") as clock:
        result = run_stage(model, loss, config)
    return TrainReport(
        result.trajectory,
        model.theta.copy(),
        clock["seconds"],
        result.final_loss,
        result.improved,
        [config.label()],
    )


def fit(
    model: QuantumModel,
    loss: LossSpec,
    config: Union[OptimizerConfig, Sequence[OptimizerConfig]],
) -> TrainReport:
    """Treina θ por um ou mais estágios e congela o modelo.

    Args:
        model: Modelo ainda não congelado.
        loss: ``Dataset`` (MSE) ou ``OdeSpec`` (resíduo da EDO).
        config: Um estágio ou uma sequência (ex.: ADAM seguido de L-BFGS).
            Uma sequência vazia não treina: o relatório traz só a perda
            inicial.

    Returns:
        TrainReport: trajetória concatenada de todos os estágios.

    """
    if model.frozen:
        raise FrozenModelError(
            "Não é possível treinar um modelo congelado."
        )
    stages = [config] if isinstance(config, OptimizerConfig) else list(config)
    trajectory: List[float] = []
    improved = True
    with timed("fit") as clock:
        final_loss = 0.0
        for stage in stages:
            result = run_stage(model, loss, stage)
            trajectory.extend(result.trajectory)
            final_loss = result.final_loss
            improved = improved and result.improved
        if not stages:
            final_loss = loss_value(model, loss)
            trajectory = [final_loss]
    model.freeze()
    logger.info(
        f"Treino concluído: {len(trajectory)} épocas, perda final "
        f"{final_loss:.6e} em {clock['seconds']:.2f}s."
    )
    return TrainReport(
        trajectory,
        model.theta.copy(),
        clock["seconds"],
        final_loss,
        improved,
        [stage.label() for stage in stages],
    )
