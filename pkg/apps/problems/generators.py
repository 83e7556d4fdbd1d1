"""Geradores semeados das instâncias de benchmark.

Todos são funções puras do ``numpy.random.Generator`` recebido.
"""

import numpy as np

from apps.problems.constants import ProblemConstants
from apps.problems.instances import (
    CorrelationChainInstance,
    MaxCutInstance,
    MoleculeInstance,
    chain_from_coefficients,
    chain_windows,
    maxcut_from_points,
    molecule_from_tables,
)
from tools.exceptions import ProblemError


def gen_maxcut_clusters(
    n: int,
    separation: float = ProblemConstants.DEFAULT_SEPARATION,
    rng: np.random.Generator = None,
) -> MaxCutInstance:
    """Dois aglomerados de n/2 pontos.

    O primeiro fica em [0, 1]², o segundo em [s, s+1] x [0, 1]. Os
    primeiros n/2 índices pertencem ao primeiro aglomerado, então com
    separação grande o corte ótimo é 0…01…1 (e seu complemento).
    """
    if n < 4 or n % 2:
        raise ProblemError(
            f"Max-Cut em aglomerados exige n par >= 4, recebeu {n}.", n=n
        )
    if rng is None:
        raise ProblemError("Gerador aleatório obrigatório.")
    half = n // 2
    first = rng.uniform(0.0, 1.0, size=(half, 2))
    second = rng.uniform(0.0, 1.0, size=(half, 2))
    second[:, 0] += separation
    return maxcut_from_points(np.vstack([first, second]), separation)


def gen_correlation_chain(
    n: int, max_order: int, rng: np.random.Generator
) -> CorrelationChainInstance:
    """Pesos ~ Normal(0, 1) para cada janela contígua de tamanho até
    ``max_order``."""
    if max_order not in (2, 3):
        raise ProblemError(
            f"Ordem máxima deve ser 2 ou 3, recebeu {max_order}.",
            max_order=max_order,
        )
    count = len(list(chain_windows(n, max_order)))
    return chain_from_coefficients(
        n, max_order, rng.normal(0.0, 1.0, size=count)
    )


def gen_molecule(rng: np.random.Generator) -> MoleculeInstance:
    """Tabelas aleatórias de 5 substituintes com 2 opções cada.

    As tabelas de pares são simetrizadas espelhando o triângulo superior:
    E_{i,i+1}(a, b) = E_{i,i+1}(b, a).
    """
    size = ProblemConstants.MOLECULE_SUBSTITUENTS
    linear = rng.normal(
        0.0, ProblemConstants.MOLECULE_LINEAR_STD, size=(size, 2)
    )
    quadratic = rng.normal(
        0.0, ProblemConstants.MOLECULE_QUADRATIC_STD, size=(size - 1, 2, 2)
    )
    quadratic[:, 1, 0] = quadratic[:, 0, 1]
    return molecule_from_tables(linear, quadratic)
