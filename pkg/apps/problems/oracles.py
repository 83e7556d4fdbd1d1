from typing import List, Optional, Tuple

import numpy as np

from apps.problems.constants import Direction, ProblemConstants
from tools.exceptions import ProblemError
from tools.utils import all_bitstrings


def brute_force_optimum(
    instance, direction: Optional[Direction] = None
) -> Tuple[List[str], float]:
    """Varre todas as 2^n bitstrings e devolve todos os ótimos empatados.

    Args:
        instance: Instância discreta (``n_bits`` e ``costs()``).
        direction: Padrão: ``instance.default_direction``.

    Returns:
        tuple: (bitstrings ótimas em ordem lexicográfica, valor ótimo).

    """
    n_bits = instance.n_bits
    if n_bits > ProblemConstants.MAX_BRUTE_FORCE_BITS:
        raise ProblemError(
            f"Força bruta limitada a "
            f"{ProblemConstants.MAX_BRUTE_FORCE_BITS} bits, recebeu "
            f"{n_bits}.",
            n_bits=n_bits,
        )
    direction = Direction(direction or instance.default_direction)
    signed = direction.sign * instance.costs()
    best = float(signed.max())
    tolerance = ProblemConstants.TIE_TOLERANCE * max(1.0, abs(best))
    winners = np.flatnonzero(signed >= best - tolerance)
    labels = all_bitstrings(n_bits)
    return [labels[index] for index in winners], direction.sign * best
