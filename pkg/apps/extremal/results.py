from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from apps.extremal.constants import ExtremalConstants


@dataclass
class ExtremalResult:
    """Resultado de uma extremização.

    ``trajectory`` tem o objetivo no início de cada época. Resultados
    contínuos preenchem ``best_input``; discretos preenchem
    ``distribution`` (rótulo -> probabilidade) e ``top_candidates``.
    """

    trajectory: List[float] = field(default_factory=list)
    best_input: Optional[float] = None
    best_value: Optional[float] = None
    inputs: List[float] = field(default_factory=list)
    distribution: Dict[str, float] = field(default_factory=dict)
    top_candidates: List[Tuple[str, float]] = field(default_factory=list)
    params: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trajectory": [float(v) for v in self.trajectory],
            "best_input": self.best_input,
            "best_value": self.best_value,
            "inputs": [float(v) for v in self.inputs],
            "distribution": {
                key: float(value)
                for key, value in sorted(self.distribution.items())
            },
            "top_candidates": [
                [label, float(p)] for label, p in self.top_candidates
            ],
            "params": [float(v) for v in self.params],
        }


def rank_candidates(
    distribution: Dict[str, float],
    top_k: int = ExtremalConstants.DEFAULT_TOP_K,
) -> List[Tuple[str, float]]:
    """Maiores probabilidades; empates em ordem lexicográfica do rótulo."""
    ranked = sorted(distribution.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:top_k]


def total_optimal_probability(
    result: ExtremalResult, optimal_set: Iterable[str]
) -> float:
    """Massa de probabilidade nas bitstrings ótimas do oráculo."""
    return float(
        sum(result.distribution.get(bits, 0.0) for bits in set(optimal_set))
    )
