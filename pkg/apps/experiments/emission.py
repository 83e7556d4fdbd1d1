"""Gravação dos artefatos de um experimento.

Layout de ``<out>/<experimento>/``::

    config.json                      configuração resolvida
    <tabela>.csv                     agregados (summary, thresholds, ...)
    trials/<rótulo>/report.json      relatório completo do trial
    trials/<rótulo>/<tabela>.csv     curvas e trajetórias do trial

JSON com chaves ordenadas e CSV com formato de float fixo: duas execuções
com a mesma configuração produzem os mesmos bytes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd

from apps.experiments.constants import EmissionConstants
from apps.experiments.reports import Rows
from apps.experiments.runner import ExperimentRun
from tools.retry_service import write_text

logger = logging.getLogger(__name__)


def _default(value: Any) -> Any:
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"{type(value).__name__} não é serializável em JSON.")


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_default) + (
        "\n"
    )


def write_json(path: Union[str, Path], payload: Any) -> Path:
    return write_text(path, dumps(payload))


def table_csv(table: Union[pd.DataFrame, Rows]) -> str:
    frame = table if isinstance(table, pd.DataFrame) else pd.DataFrame(table)
    return frame.to_csv(
        index=False,
        float_format=EmissionConstants.FLOAT_FORMAT,
        lineterminator="\n",
    )


def write_table(
    path: Union[str, Path], table: Union[pd.DataFrame, Rows]
) -> Path:
    return write_text(path, table_csv(table))


def emit(run: ExperimentRun, out_dir: Union[str, Path]) -> List[Path]:
    """Grava configuração, relatórios, tabelas por trial e agregados.

    Args:
        run: Resultado de ``run_experiment``.
        out_dir: Diretório raiz; o experimento ganha um subdiretório.

    Returns:
        list: Caminhos gravados, na ordem de gravação.

    Raises:
        EmissionError: se alguma gravação falhar após os retries.

    """
    root = Path(out_dir) / run.config.experiment.value
    written = [write_json(root / "config.json", run.config.to_dict())]
    for report in run.reports:
        trial_dir = root / "trials" / report.label
        written.append(write_json(trial_dir / "report.json", report.to_dict()))
        for name, rows in sorted(report.tables.items()):
            written.append(write_table(trial_dir / f"{name}.csv", rows))
    tables: Dict[str, pd.DataFrame] = run.tables
    for name, table in sorted(tables.items()):
        written.append(write_table(root / f"{name}.csv", table))
    logger.info(f"{len(written)} arquivos gravados em {root}.")
    return written
