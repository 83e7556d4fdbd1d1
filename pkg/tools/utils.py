"""Utilitários compartilhados entre as apps do qelab.

Conversões de bitstrings, geradores aleatórios semeados e medição de
tempo. Nenhuma função deste módulo depende das settings do Django.
"""

import logging
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional

import numpy as np

from tools.exceptions import ProblemError

logger = logging.getLogger(__name__)


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Cria um gerador ``numpy`` determinístico a partir da seed.

    Args:
        seed (int | None): Seed do stream. ``None`` gera entropia do SO e
            só deve ser usado fora de experimentos.

    Returns:
        numpy.random.Generator: Stream independente, nunca compartilhado
            entre trials.

    Example:
        >>> make_rng(7).integers(0, 10) == make_rng(7).integers(0, 10)
        True

    """
    return np.random.default_rng(seed)


def int_to_bits(value: int, width: int) -> str:
    """Converte um inteiro em bitstring de largura fixa.

    O bit mais significativo corresponde ao qubit 0 (primeiro qubit do
    registrador), convenção usada em todo o projeto.

    Example:
        >>> int_to_bits(5, 3)
        '101'

    """
    if value < 0 or value >= 2**width:
        raise ProblemError(
            f"Valor {value} não cabe em {width} bits.",
            value=value,
            width=width,
        )
    return format(value, f"0{width}b")


def bits_to_int(bits: str) -> int:
    """Converte uma bitstring ('0'/'1') no índice da base computacional."""
    validate_bits(bits)
    return int(bits, 2) if bits else 0


def validate_bits(bits: str, width: Optional[int] = None) -> str:
    """Garante que ``bits`` é binária e, se pedido, tem a largura dada."""
    if any(symbol not in "01" for symbol in bits):
        raise ProblemError(
            f"Bitstring com símbolo não binário: {bits!r}.", bits=bits
        )
    if width is not None and len(bits) != width:
        raise ProblemError(
            f"Bitstring {bits!r} tem {len(bits)} bits, esperado {width}.",
            bits=bits,
            width=width,
        )
    return bits


def all_bitstrings(width: int) -> List[str]:
    """Lista todas as 2^width bitstrings em ordem lexicográfica."""
    return [int_to_bits(index, width) for index in range(2**width)]


def complement(bits: str) -> str:
    """Inverte todos os bits de uma bitstring."""
    return "".join("1" if bit == "0" else "0" for bit in bits)


def bit_matrix(width: int) -> np.ndarray:
    """Matriz (2^width, width) com os bits de cada índice da base."""
    indices = np.arange(2**width)[:, None]
    shifts = np.arange(width - 1, -1, -1)[None, :]
    return (indices >> shifts) & 1


@contextmanager
def timed(label: str) -> Iterator[dict]:
    """Context manager que mede o tempo de parede de um bloco.

    Example:
        >>> with timed("fit") as clock:
        ...     pass
        >>> clock["seconds"] >= 0
        True

    """
    clock = {"seconds": 0.0}
    start = time.perf_counter()
    try:
        yield clock
    finally:
        clock["seconds"] = time.perf_counter() - start
        logger.debug(f"{label} concluído em {clock['seconds']:.3f}s")
