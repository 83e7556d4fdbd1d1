"""Forma resolvida e imutável de uma configuração de experimento.

Só depende de numpy e das apps de domínio, então pode ser desserializada
nos workers sem carregar o Django REST Framework.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from apps.circuit.constants import CircuitConstants
from apps.experiments.constants import ExperimentDefaults, ExperimentKind
from apps.extremal.config import ExtremizeConfig
from apps.problems.constants import Direction
from apps.train.optimizers import OptimizerConfig, OptimizerKind


@dataclass(frozen=True)
class ExtremizerSpec:
    lr: float
    epochs: int
    direction: Optional[Direction] = None
    x0: Optional[Tuple[float, ...]] = None
    bounds: Optional[Tuple[float, float]] = None
    top_k: int = ExperimentDefaults.TOP_K

    def build(
        self, seed: Optional[int], default_direction: Direction
    ) -> ExtremizeConfig:
        return ExtremizeConfig(
            self.direction or default_direction,
            self.lr,
            self.epochs,
            self.x0,
            seed,
            self.bounds,
        )


@dataclass(frozen=True)
class DatasetSpec:
    size: Optional[int] = None
    sizes: Tuple[int, ...] = ()
    fraction: Optional[float] = None
    exclusion: Optional[Tuple[float, float]] = None
    points_per_n: Optional[int] = None
    collocation: Optional[int] = None

    def training_sizes(self, n_bits: int) -> Tuple[int, ...]:
        """Tamanhos de treino discretos: ``sizes``, ``size`` ou fração de
        2^N, nessa ordem de prioridade."""
        if self.sizes:
            return self.sizes
        if self.size:
            return (self.size,)
        fraction = self.fraction if self.fraction is not None else 1.0
        return (max(1, int(round(fraction * 2**n_bits))),)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: ExperimentKind
    n_qubits: int
    depth: int
    model_stages: Tuple[OptimizerConfig, ...]
    extremizer: ExtremizerSpec
    dataset: DatasetSpec
    trials: int
    seed: int
    alpha: float
    beta: float
    thresholds: Tuple[float, ...]
    fixed_threshold: float
    separation: float = 0.0
    alphas: Tuple[float, ...] = ()
    init_scale: float = CircuitConstants.THETA_INIT_SCALE
    feature_span: Optional[float] = None
    out: Optional[str] = None
    raw: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def seeds(self) -> List[int]:
        """Seeds dos trials: base, base + 1, ..., base + trials − 1."""
        return [self.seed + index for index in range(self.trials)]

    def to_dict(self) -> dict:
        """Configuração validada, pronta para ``config.json``. O diretório
        de saída fica de fora."""
        return {key: value for key, value in self.raw.items() if key != "out"}

    @classmethod
    def from_validated(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        kind = ExperimentKind(data["experiment"])
        n_qubits = data["n_qubits"]
        stages = tuple(
            OptimizerConfig(
                OptimizerKind(stage["optimizer"]),
                stage["lr"],
                stage["epochs"],
                **(
                    {"history": stage["history"]}
                    if "history" in stage
                    else {}
                ),
            )
            for stage in data["model_stages"]
        )
        extremizer = data["extremizer"]
        bounds = extremizer.get("bounds")
        x0 = extremizer.get("x0")
        direction = extremizer.get("direction")
        dataset = data["dataset"]
        center = dataset.get("exclusion_center")
        exclusion = None
        if center is not None:
            exclusion = (center, dataset.get("exclusion_half_width", 0.0))
        alphas: Tuple[float, ...] = ()
        scan = data.get("alpha_scan")
        if kind == ExperimentKind.ALPHA_SCAN and scan:
            grid = np.arange(
                scan["start"], scan["stop"] + scan["step"] / 2, scan["step"]
            )
            alphas = tuple(float(value) for value in np.round(grid, 10))
        depth = data["depth"]
        alpha = data["alpha"]
        return cls(
            experiment=kind,
            n_qubits=n_qubits,
            depth=depth if depth is not None else n_qubits * n_qubits,
            model_stages=stages,
            extremizer=ExtremizerSpec(
                extremizer["lr"],
                extremizer["epochs"],
                Direction(direction) if direction else None,
                tuple(x0) if x0 is not None else None,
                tuple(bounds) if bounds is not None else None,
                extremizer.get("top_k", ExperimentDefaults.TOP_K),
            ),
            dataset=DatasetSpec(
                dataset.get("size"),
                tuple(dataset.get("sizes", ())),
                dataset.get("fraction"),
                exclusion,
                dataset.get("points_per_n"),
                dataset.get("collocation"),
            ),
            trials=data["trials"],
            seed=data["seed"],
            alpha=alpha if alpha is not None else 2.0 * n_qubits,
            beta=data["beta"],
            thresholds=tuple(data["thresholds"]),
            fixed_threshold=data["fixed_threshold"],
            separation=data.get("separation", 0.0),
            alphas=alphas,
            init_scale=data.get(
                "init_scale", CircuitConstants.THETA_INIT_SCALE
            ),
            feature_span=data.get("feature_span"),
            out=data.get("out"),
            raw=_plain(data),
        )


def _plain(value):
    """Converte OrderedDicts e ReturnLists do DRF em tipos JSON puros."""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value
