"""Instâncias discretas de benchmark e suas funções de custo.

Toda instância expõe ``n_bits``, ``cost(bits)``, ``costs()`` (vetor com o
custo de todas as 2^n bitstrings em ordem lexicográfica),
``default_direction`` e ``to_dict()``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.problems.constants import Direction, ProblemConstants
from tools.exceptions import ProblemError
from tools.utils import bit_matrix, validate_bits


def _bits_row(bits: str, width: int) -> np.ndarray:
    validate_bits(bits, width)
    return np.array([int(bit) for bit in bits], dtype=float)[None, :]


@dataclass(frozen=True)
class MaxCutInstance:
    """Grafo completo sobre pontos 2D com pesos = distâncias euclidianas."""

    points: np.ndarray
    weights: np.ndarray
    separation: float = 0.0

    kind = "maxcut"
    default_direction = Direction.MAXIMIZE

    @property
    def n_bits(self) -> int:
        return self.points.shape[0]

    def cut_values(self, rows: np.ndarray) -> np.ndarray:
        # Σ_{i<j} w_ij [z_i ≠ z_j] = z·d − zᵀWz, com d = W·1
        degrees = self.weights.sum(axis=1)
        quadratic = np.einsum("ki,ij,kj->k", rows, self.weights, rows)
        return rows @ degrees - quadratic

    def cost(self, bits: str) -> float:
        return maxcut_cost(self, bits)

    def costs(self) -> np.ndarray:
        return self.cut_values(bit_matrix(self.n_bits).astype(float))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "points": self.points.tolist(),
            "separation": self.separation,
        }


def maxcut_from_points(points, separation: float = 0.0) -> MaxCutInstance:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ProblemError(
            "Pontos devem ter shape (N, 2).", shape=points.shape
        )
    deltas = points[:, None, :] - points[None, :, :]
    weights = np.sqrt((deltas**2).sum(axis=-1))
    return MaxCutInstance(points, weights, separation)


def maxcut_cost(instance: MaxCutInstance, bits: str) -> float:
    """Valor do corte: soma dos pesos das arestas com extremos separados."""
    row = _bits_row(bits, instance.n_bits)
    return float(instance.cut_values(row)[0])


@dataclass(frozen=True)
class CorrelationChainInstance:
    """Cadeia com correlações de vizinhos próximos até ``max_order``.

    ``terms`` guarda (janela de índices contíguos, peso). O custo usa spins
    s_i = 1 − 2 z_i.
    """

    n: int
    max_order: int
    terms: Tuple[Tuple[Tuple[int, ...], float], ...]

    kind = "chain"
    default_direction = Direction.MAXIMIZE

    @property
    def n_bits(self) -> int:
        return self.n

    def spin_costs(self, rows: np.ndarray) -> np.ndarray:
        spins = 1.0 - 2.0 * rows
        total = np.zeros(rows.shape[0])
        for window, weight in self.terms:
            total += weight * np.prod(spins[:, list(window)], axis=1)
        return total

    def cost(self, bits: str) -> float:
        return chain_cost(self, bits)

    def costs(self) -> np.ndarray:
        return self.spin_costs(bit_matrix(self.n).astype(float))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "max_order": self.max_order,
            "terms": [
                {"window": list(window), "weight": weight}
                for window, weight in self.terms
            ],
        }


def chain_windows(n: int, max_order: int):
    """Janelas contíguas de tamanho 1..max_order, por tamanho e início."""
    for length in range(1, max_order + 1):
        for start in range(n - length + 1):
            yield tuple(range(start, start + length))


def chain_from_coefficients(
    n: int, max_order: int, weights
) -> CorrelationChainInstance:
    """Monta a cadeia a partir dos pesos na ordem de ``chain_windows``."""
    if max_order not in (2, 3):
        raise ProblemError(
            f"Ordem máxima deve ser 2 ou 3, recebeu {max_order}.",
            max_order=max_order,
        )
    if n < max_order:
        raise ProblemError(
            f"Cadeia de {n} variáveis não comporta ordem {max_order}.",
            n=n,
            max_order=max_order,
        )
    windows = list(chain_windows(n, max_order))
    weights = [float(w) for w in np.asarray(weights, dtype=float)]
    if len(weights) != len(windows):
        raise ProblemError(
            f"Esperados {len(windows)} pesos, recebidos {len(weights)}.",
            expected=len(windows),
            received=len(weights),
        )
    return CorrelationChainInstance(
        n, max_order, tuple(zip(windows, weights))
    )


def chain_cost(instance: CorrelationChainInstance, bits: str) -> float:
    row = _bits_row(bits, instance.n)
    return float(instance.spin_costs(row)[0])


@dataclass(frozen=True)
class MoleculeInstance:
    """Tabelas de energia por substituinte (linear, 5x2) e por par de
    vizinhos (quadratic, 4x2x2, simétrica em cada par)."""

    linear: np.ndarray
    quadratic: np.ndarray

    kind = "molecule"
    default_direction = Direction.MINIMIZE

    @property
    def n_bits(self) -> int:
        return self.linear.shape[0]

    def energies(self, rows: np.ndarray) -> np.ndarray:
        bits = rows.astype(int)
        positions = np.arange(self.n_bits)
        total = self.linear[positions, bits].sum(axis=1)
        pairs = np.arange(self.n_bits - 1)
        total += self.quadratic[pairs, bits[:, :-1], bits[:, 1:]].sum(axis=1)
        return total

    def cost(self, bits: str) -> float:
        return molecule_energy(self, bits)

    def costs(self) -> np.ndarray:
        return self.energies(bit_matrix(self.n_bits))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "linear": self.linear.tolist(),
            "quadratic": self.quadratic.tolist(),
        }


def molecule_from_tables(linear, quadratic) -> MoleculeInstance:
    linear = np.asarray(linear, dtype=float)
    quadratic = np.asarray(quadratic, dtype=float)
    size = ProblemConstants.MOLECULE_SUBSTITUENTS
    if linear.shape != (size, 2) or quadratic.shape != (size - 1, 2, 2):
        raise ProblemError(
            "Tabelas de molécula com shape inválido.",
            linear=linear.shape,
            quadratic=quadratic.shape,
        )
    return MoleculeInstance(linear, quadratic)


def molecule_energy(instance: MoleculeInstance, bits: str) -> float:
    """E_total = Σ_i E_i(b_i) + Σ_i E_{i,i+1}(b_i, b_{i+1})."""
    row = _bits_row(bits, instance.n_bits)
    return float(instance.energies(row)[0])
