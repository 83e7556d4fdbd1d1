from apps.experiments.constants import ExperimentKind, TrialStatus
from apps.experiments.emission import emit, write_json, write_table
from apps.experiments.reports import (
    TrialReport,
    aggregate,
    threshold_frequency,
)
from apps.experiments.runner import (
    ExperimentRun,
    make_instance,
    run_experiment,
    run_trial,
    trial_tasks,
)
from apps.experiments.specs import (
    DatasetSpec,
    ExperimentConfig,
    ExtremizerSpec,
)

__all__ = [
    "DatasetSpec",
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentRun",
    "ExtremizerSpec",
    "TrialReport",
    "TrialStatus",
    "aggregate",
    "emit",
    "make_instance",
    "run_experiment",
    "run_trial",
    "threshold_frequency",
    "trial_tasks",
    "write_json",
    "write_table",
]
