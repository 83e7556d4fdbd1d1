"""Funções contínuas de referência e suas soluções exatas."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.problems.constants import ProblemConstants
from apps.train.datasets import OdeSpec
from tools.exceptions import ProblemError


def target_sin5x(x):
    return np.sin(5 * np.asarray(x, dtype=float))


def ode_rhs(x):
    """g(x) = −sin(10x) + 3cos(25x) − 2x + 5/4."""
    x = np.asarray(x, dtype=float)
    return -np.sin(10 * x) + 3 * np.cos(25 * x) - 2 * x + 1.25


def ode_analytic(x):
    """Solução de f' = g com f(0) = 0."""
    x = np.asarray(x, dtype=float)
    return (
        (np.cos(10 * x) - 1) / 10
        + (3 / 25) * np.sin(25 * x)
        - x**2
        + 1.25 * x
    )


def dqc_ode_spec(collocation: int = 50) -> OdeSpec:
    return OdeSpec(
        ode_rhs,
        ProblemConstants.ODE_BOUNDARY,
        ProblemConstants.ODE_DOMAIN,
        collocation,
    )


def _branch(x: np.ndarray, n: int) -> np.ndarray:
    if n == 1:
        return -(x**2) * np.sin(2 * x + 2)
    if n == 2:
        return x**3 * np.sin(2 * x) - 0.2
    if n == 3:
        return np.sin(2 * x - 0.5) ** 2 - 0.6
    return -x * np.sin(2 * x + 2) / 2


def mixed_f(x, n: int):
    """Função mista com n ∈ {1, 2, 3, 4} (base um)."""
    if int(n) != n or not 1 <= n <= ProblemConstants.MIXED_BRANCHES:
        raise ProblemError(
            f"n deve estar em {{1, 2, 3, 4}}, recebeu {n}.", n=n
        )
    return _branch(np.asarray(x, dtype=float), int(n))


@dataclass(frozen=True)
class MixedFunctionSpec:
    """f(x, n) em [−1, 1] x {1, 2, 3, 4}; o alvo é o mínimo."""

    domain: Tuple[float, float] = ProblemConstants.MIXED_DOMAIN
    branches: int = ProblemConstants.MIXED_BRANCHES

    kind = "mixed"

    def __call__(self, x, n: int):
        return mixed_f(x, n)

    def grid_optimum(
        self, points: int = ProblemConstants.MIXED_GRID_POINTS
    ) -> Tuple[float, int, float]:
        """Mínimo por varredura densa: (x, n, valor)."""
        xs = np.linspace(self.domain[0], self.domain[1], points)
        table = np.vstack(
            [mixed_f(xs, n) for n in range(1, self.branches + 1)]
        )
        branch, index = np.unravel_index(np.argmin(table), table.shape)
        return float(xs[index]), int(branch) + 1, float(table[branch, index])

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "domain": list(self.domain),
            "branches": self.branches,
        }
