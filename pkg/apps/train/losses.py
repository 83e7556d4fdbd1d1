"""Funções de perda e seus gradientes em θ.

Os gradientes usam as rotinas em lote do app ``diff``; nenhuma perda
altera θ.
"""

from typing import Tuple

import numpy as np

from apps.circuit.model import QuantumModel, evaluate_batch
from apps.diff.gradients import (
    dfdx_batch,
    dfdx_theta_jacobian_batch,
    theta_jacobian_batch,
)
from apps.train.datasets import Dataset, OdeSpec


def mse_loss(model: QuantumModel, dataset: Dataset) -> float:
    """Erro quadrático médio do modelo sobre o conjunto."""
    dataset.require_nonempty()
    predictions = evaluate_batch(model, dataset.inputs)
    return float(np.mean((predictions - dataset.targets) ** 2))


def mse_loss_and_grad(
    model: QuantumModel, dataset: Dataset
) -> Tuple[float, np.ndarray]:
    dataset.require_nonempty()
    values, jacobian, _evaluations = theta_jacobian_batch(
        model, dataset.inputs
    )
    residual = values - dataset.targets
    loss = float(np.mean(residual**2))
    grad = 2.0 * residual @ jacobian / len(dataset)
    return loss, grad


def residual_loss_from_values(
    ode: OdeSpec, derivatives: np.ndarray, boundary_value: float
) -> float:
    """Perda de resíduo a partir de derivadas já avaliadas na grade.

    Serve tanto para o modelo quanto para soluções clássicas.
    """
    residual = np.asarray(derivatives, dtype=float) - ode.rhs(ode.grid())
    penalty = (boundary_value - ode.boundary[1]) ** 2
    return float(np.mean(residual**2) + ode.boundary_weight * penalty)


def ode_residual_loss(model: QuantumModel, ode: OdeSpec) -> float:
    """mean((f'(x) − g(x))²) na grade + w_b·(f(x0) − f0)²."""
    grid = ode.grid().reshape(-1, 1)
    derivatives, _clamped, _evaluations = dfdx_batch(model, grid)
    boundary_value = evaluate_batch(model, [[ode.boundary[0]]])[0]
    return residual_loss_from_values(ode, derivatives, boundary_value)


def ode_residual_loss_and_grad(
    model: QuantumModel, ode: OdeSpec
) -> Tuple[float, np.ndarray]:
    grid = ode.grid()
    derivatives, jacobian, _evaluations = dfdx_theta_jacobian_batch(
        model, grid.reshape(-1, 1)
    )
    boundary, boundary_jac, _evaluations = theta_jacobian_batch(
        model, [[ode.boundary[0]]]
    )
    residual = derivatives - ode.rhs(grid)
    gap = boundary[0] - ode.boundary[1]
    loss = float(np.mean(residual**2) + ode.boundary_weight * gap**2)
    grad = 2.0 * residual @ jacobian / grid.size
    grad = grad + 2.0 * ode.boundary_weight * gap * boundary_jac[0]
    return loss, grad
