"""Extremização contínua: subida/descida de gradiente na entrada x."""

import logging
from typing import List

import numpy as np

from apps.circuit.model import QuantumModel, evaluate_model
from apps.diff.gradients import dfdx_batch
from apps.extremal.config import ExtremizeConfig
from apps.extremal.results import ExtremalResult
from apps.train.optimizers import adam_step
from tools.exceptions import BindingError, TrainingError

logger = logging.getLogger(__name__)


def _start(config: ExtremizeConfig, lo: float, hi: float) -> float:
    if config.x0 is None:
        return 0.5 * (lo + hi)
    values = np.atleast_1d(np.asarray(config.x0, dtype=float))
    if values.size != 1:
        raise BindingError(
            "Extremização contínua espera um único x0.", size=values.size
        )
    return float(np.clip(values[0], lo, hi))


def extremize_continuous(
    model: QuantumModel, config: ExtremizeConfig
) -> ExtremalResult:
    """ADAM sobre x usando df/dx do modelo congelado.

    A cada passo x é grampeado em ``config.domain()``. A trajetória guarda
    o valor do modelo no início de cada época; o resultado traz o x final
    e o valor do modelo nele. θ não é alterado.
    """
    model.require_frozen()
    if model.n_features != 1:
        raise BindingError(
            "Extremização contínua exige um modelo de uma feature.",
            n_features=model.n_features,
        )
    lo, hi = config.domain()
    sign = config.direction.sign
    state = config.adam_state(1)
    x = np.array([_start(config, lo, hi)])
    trajectory: List[float] = []
    inputs: List[float] = []
    for epoch in range(config.epochs):
        rows = x.reshape(1, 1)
        slope, _clamped, _evaluations = dfdx_batch(model, rows)
        if not np.all(np.isfinite(slope)):
            raise TrainingError(
                f"Gradiente em x não finito na época {epoch}.", epoch
            )
        inputs.append(float(x[0]))
        trajectory.append(evaluate_model(model, x))
        x = np.clip(adam_step(state, x, -sign * slope), lo, hi)
    value = evaluate_model(model, x)
    logger.debug(
        f"Extremizador contínuo: x = {x[0]:.6f}, valor = {value:.6e}."
    )
    return ExtremalResult(
        trajectory=trajectory,
        best_input=float(x[0]),
        best_value=value,
        inputs=inputs,
        params=[float(x[0])],
    )
