"""Conjuntos de treino para cada família de problema.

Entradas discretas são o índice inteiro da bitstring (qubit 0 = bit mais
significativo), que é o que o feature map digital consome.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from apps.problems.constants import ProblemConstants
from apps.problems.functions import MixedFunctionSpec
from apps.train.datasets import Dataset, scale_targets
from tools.exceptions import DatasetError

Window = Tuple[float, float]


def spaced_outside(
    domain: Tuple[float, float], count: int, window: Optional[Window] = None
) -> np.ndarray:
    """``count`` pontos igualmente espaçados no domínio menos a janela
    aberta ``(centro − meia largura, centro + meia largura)``."""
    lo, hi = domain
    if count < 1:
        raise DatasetError(f"Tamanho inválido: {count}.", size=count)
    if window is None:
        return np.linspace(lo, hi, count)
    center, half = window
    left = max(lo, min(hi, center - half))
    right = min(hi, max(lo, center + half))
    first = left - lo
    allowed = first + (hi - right)
    if allowed <= 0:
        raise DatasetError(
            "A janela de exclusão cobre todo o domínio.",
            domain=list(domain),
            window=list(window),
        )
    steps = np.linspace(0.0, allowed, count)
    return np.where(steps <= first, lo + steps, right + (steps - first))


def make_discrete_training_set(
    instance, size: int, rng: np.random.Generator, scale: bool = True
) -> Dataset:
    """Amostra ``size`` bitstrings distintas e seus custos exatos."""
    space = 2**instance.n_bits
    if not 1 <= size <= space:
        raise DatasetError(
            f"Tamanho {size} fora de [1, {space}].", size=size, space=space
        )
    if size == space:
        chosen = np.arange(space)
    else:
        chosen = np.sort(rng.choice(space, size=size, replace=False))
    dataset = Dataset(chosen.reshape(-1, 1), instance.costs()[chosen])
    return scale_targets(dataset)[0] if scale else dataset


def make_continuous_training_set(
    function: Callable,
    size: int,
    domain: Tuple[float, float] = (0.0, 1.0),
    exclusion: Optional[Window] = None,
) -> Dataset:
    xs = spaced_outside(domain, size, exclusion)
    return Dataset(xs.reshape(-1, 1), function(xs))


def make_mixed_training_set(
    spec: MixedFunctionSpec,
    points_per_n: int = ProblemConstants.MIXED_POINTS_PER_N,
    exclusion: Optional[Window] = None,
    scale: bool = True,
) -> Dataset:
    """Pontos (x, n − 1) em cada ramo; a janela de exclusão só vale no
    ramo do ótimo."""
    best_n = ProblemConstants.MIXED_OPTIMUM[1]
    rows = []
    targets = []
    for n in range(1, spec.branches + 1):
        window = exclusion if n == best_n else None
        xs = spaced_outside(spec.domain, points_per_n, window)
        rows.append(np.column_stack([xs, np.full(xs.size, n - 1)]))
        targets.append(spec(xs, n))
    dataset = Dataset(np.vstack(rows), np.concatenate(targets))
    return scale_targets(dataset)[0] if scale else dataset


def make_training_set(
    source,
    size: int,
    rng: Optional[np.random.Generator] = None,
    exclusion: Optional[Window] = None,
    scale: bool = True,
) -> Dataset:
    """Despacha para o construtor da família de ``source``.

    - instância discreta: amostragem sem reposição (precisa de ``rng``);
    - ``MixedFunctionSpec``: ``size`` pontos por valor de n;
    - função contínua em [0, 1]: grade uniforme menos a exclusão.
    """
    if isinstance(source, MixedFunctionSpec):
        return make_mixed_training_set(source, size, exclusion, scale)
    if hasattr(source, "n_bits"):
        if rng is None:
            raise DatasetError("Amostragem discreta exige um rng semeado.")
        return make_discrete_training_set(source, size, rng, scale)
    if callable(source):
        return make_continuous_training_set(source, size, exclusion=exclusion)
    raise DatasetError(
        f"Fonte de dados desconhecida: {type(source).__name__}."
    )
