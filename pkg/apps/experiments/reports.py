"""Relatórios de trial e agregações puras sobre eles."""

from dataclasses import dataclass, field, fields
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from apps.experiments.constants import (
    EmissionConstants,
    ExperimentKind,
    TrialStatus,
)
from tools.exceptions import DatasetError

Rows = List[Dict[str, Any]]


@dataclass
class TrialReport:
    """Resultado de um trial (uma seed e, nos discretos, um tamanho de
    treino). ``tables`` guarda linhas prontas para CSV por nome."""

    experiment: str
    seed: int
    training_size: Optional[int] = None
    status: TrialStatus = TrialStatus.OK
    error: Optional[Dict[str, Any]] = None
    instance: Optional[Dict[str, Any]] = None
    training: Optional[Dict[str, Any]] = None
    extremal: Optional[Dict[str, Any]] = None
    optimal_set: List[str] = field(default_factory=list)
    optimal_value: Optional[float] = None
    total_optimal_probability: Optional[float] = None
    metrics: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, Rows] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def label(self) -> str:
        if self.training_size is None:
            return f"seed{self.seed}"
        return f"seed{self.seed}_size{self.training_size}"

    @property
    def completed(self) -> bool:
        return self.status == TrialStatus.OK

    @property
    def final_loss(self) -> Optional[float]:
        if not self.training:
            return None
        return self.training.get("final_loss")

    def to_dict(self) -> dict:
        """Documento do trial, sem ``wall_time``: reexecuções geram os
        mesmos bytes."""
        payload = {
            item.name: getattr(self, item.name)
            for item in fields(self)
            if item.name not in ("wall_time", "tables")
        }
        payload["status"] = self.status.value
        payload["schema_version"] = EmissionConstants.SCHEMA_VERSION
        payload["tables"] = {
            name: rows for name, rows in sorted(self.tables.items())
        }
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "TrialReport":
        known = {item.name for item in fields(cls)}
        data = {key: value for key, value in payload.items() if key in known}
        data["status"] = TrialStatus(data.get("status", TrialStatus.OK))
        return cls(**data)


def threshold_frequency(
    reports: Iterable[TrialReport], thresholds: Sequence[float]
) -> pd.DataFrame:
    """Fração de trials com probabilidade ótima total > t, para cada t.

    Só entram trials concluídos com probabilidade calculada.

    Raises:
        DatasetError: se nenhum trial tiver probabilidade.

    """
    probabilities = np.array(
        [
            report.total_optimal_probability
            for report in reports
            if report.completed
            and report.total_optimal_probability is not None
        ],
        dtype=float,
    )
    if probabilities.size == 0:
        raise DatasetError("Nenhum trial concluído para agregar.")
    return pd.DataFrame(
        {
            "threshold": [float(t) for t in thresholds],
            "frequency": [
                float(np.mean(probabilities > t)) for t in thresholds
            ],
        }
    )


def _mean(values: List[float]) -> Optional[float]:
    return float(np.mean(values)) if values else None


def _std(values: List[float]) -> Optional[float]:
    return float(np.std(values)) if values else None


def _by_size(reports: Sequence[TrialReport]) -> Dict[Any, list]:
    groups: Dict[Any, list] = {}
    for report in reports:
        groups.setdefault(report.training_size, []).append(report)
    return groups


def summary_rows(
    reports: Sequence[TrialReport], fixed_threshold: float
) -> pd.DataFrame:
    """Uma linha por tamanho de treino: contagens, média e desvio das
    perdas finais e frequência acima do threshold fixo."""
    rows = []
    for size, group in _by_size(reports).items():
        done = [report for report in group if report.completed]
        losses = [
            report.final_loss
            for report in done
            if report.final_loss is not None
        ]
        probabilities = [
            report.total_optimal_probability
            for report in done
            if report.total_optimal_probability is not None
        ]
        rows.append(
            {
                "experiment": group[0].experiment,
                "training_size": size,
                "trials": len(group),
                "completed": len(done),
                "failed": len(group) - len(done),
                "mean_final_loss": _mean(losses),
                "std_final_loss": _std(losses),
                "mean_total_optimal_probability": _mean(probabilities),
                "fixed_threshold": fixed_threshold,
                "fixed_threshold_frequency": (
                    float(np.mean(np.array(probabilities) > fixed_threshold))
                    if probabilities
                    else None
                ),
            }
        )
    return pd.DataFrame(rows)


def threshold_table(
    reports: Sequence[TrialReport], thresholds: Sequence[float]
) -> pd.DataFrame:
    frames = []
    for size, group in _by_size(reports).items():
        if not any(
            report.completed and report.total_optimal_probability is not None
            for report in group
        ):
            continue
        frame = threshold_frequency(group, thresholds)
        frame.insert(0, "training_size", size)
        frames.append(frame)
    if not frames:
        return pd.DataFrame(
            columns=["training_size", "threshold", "frequency"]
        )
    return pd.concat(frames, ignore_index=True)


def alpha_table(reports: Sequence[TrialReport]) -> pd.DataFrame:
    """Por α: média e máximo da probabilidade ótima e frequência com que o
    1º (ou os 2 primeiros) candidatos são ótimos."""
    rows = [
        row
        for report in reports
        if report.completed
        for row in report.tables.get("alpha_scan", [])
    ]
    columns = [
        "alpha",
        "trials",
        "mean_total_optimal_probability",
        "max_total_optimal_probability",
        "top1_frequency",
        "top2_frequency",
    ]
    if not rows:
        return pd.DataFrame(columns=columns)
    frame = pd.DataFrame(rows)
    grouped = frame.groupby("alpha", sort=True)
    table = pd.DataFrame(
        {
            "alpha": list(grouped.groups),
            "trials": grouped.size().to_list(),
            "mean_total_optimal_probability": grouped[
                "total_optimal_probability"
            ]
            .mean()
            .to_list(),
            "max_total_optimal_probability": grouped[
                "total_optimal_probability"
            ]
            .max()
            .to_list(),
            "top1_frequency": grouped["top1_optimal"].mean().to_list(),
            "top2_frequency": grouped["top2_optimal"].mean().to_list(),
        }
    )
    return table[columns]


def mixed_tables(reports: Sequence[TrialReport]) -> Dict[str, pd.DataFrame]:
    done = [report for report in reports if report.completed]
    results = [
        dict(seed=report.seed, **row)
        for report in done
        for row in report.tables.get("result", [])
    ]
    distributions = [
        row
        for report in done
        for row in report.tables.get("n_distribution", [])
    ]
    n_distribution = pd.DataFrame(columns=["n", "probability"])
    if distributions:
        n_distribution = (
            pd.DataFrame(distributions)
            .groupby("n", sort=True)["probability"]
            .mean()
            .reset_index()
        )
    return {
        "n_distribution": n_distribution,
        "result": pd.DataFrame(results),
    }


def aggregate(
    kind: ExperimentKind,
    reports: Sequence[TrialReport],
    thresholds: Sequence[float],
    fixed_threshold: float,
) -> Dict[str, pd.DataFrame]:
    """Tabelas agregadas do experimento; função pura dos relatórios."""
    tables = {"summary": summary_rows(reports, fixed_threshold)}
    if kind == ExperimentKind.ALPHA_SCAN:
        tables["alpha_scan"] = alpha_table(reports)
    elif kind.discrete:
        tables["thresholds"] = threshold_table(reports, thresholds)
    elif kind == ExperimentKind.MIXED:
        tables.update(mixed_tables(reports))
    return tables
