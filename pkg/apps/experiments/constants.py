import copy
import math
from enum import Enum


class ExperimentKind(str, Enum):
    FIT = "fit"
    DQC = "dqc"
    MAXCUT = "maxcut"
    CHAIN2 = "chain2"
    CHAIN3 = "chain3"
    MOLECULE = "molecule"
    ALPHA_SCAN = "alpha_scan"
    MIXED = "mixed"

    @property
    def discrete(self) -> bool:
        return self in DISCRETE_KINDS


DISCRETE_KINDS = frozenset(
    {
        ExperimentKind.MAXCUT,
        ExperimentKind.CHAIN2,
        ExperimentKind.CHAIN3,
        ExperimentKind.MOLECULE,
        ExperimentKind.ALPHA_SCAN,
    }
)


class TrialStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


class EmissionConstants(object):
    SCHEMA_VERSION = 1
    FLOAT_FORMAT = "%.12g"
    CURVE_POINTS = 200
    GRID_POINTS = 10_000


class ExperimentDefaults(object):
    """Hiperparâmetros padrão por experimento.

    ``None`` em ``depth`` vale N² e em ``alpha`` vale 2N (saída igual à
    magnetização bruta); ambos são resolvidos depois de conhecido N.
    """

    TRIALS = 20
    SEED = 0
    THRESHOLDS = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    FIXED_THRESHOLD = 0.2
    TOP_K = 5

    FIT = {
        "n_qubits": 3,
        "depth": 3,
        "model_stages": [{"optimizer": "adam", "lr": 0.5, "epochs": 50}],
        "extremizer": {
            "lr": 0.2,
            "epochs": 100,
            "direction": "maximize",
            "x0": [0.5],
            "bounds": [0.0, 1.0],
        },
        "dataset": {
            "size": 20,
            "exclusion_center": math.pi / 10,
            "exclusion_half_width": 0.05,
        },
        "alpha": None,
        "beta": 0.0,
    }

    DQC = {
        "n_qubits": 6,
        "depth": 6,
        "model_stages": [
            {"optimizer": "adam", "lr": 0.1, "epochs": 250},
            {"optimizer": "lbfgs", "lr": 0.05, "epochs": 20},
        ],
        "extremizer": {
            "lr": 0.2,
            "epochs": 100,
            "direction": "maximize",
            "x0": [0.25],
            "bounds": [0.0, 1.0],
        },
        "dataset": {"collocation": 50},
        "alpha": None,
        "beta": 0.0,
        "init_scale": math.pi,
        "feature_span": 0.9,
    }

    DISCRETE = {
        "n_qubits": 6,
        "depth": None,
        "model_stages": [{"optimizer": "adam", "lr": 0.1, "epochs": 50}],
        "extremizer": {"lr": 0.1, "epochs": 150},
        "dataset": {"fraction": 1.0},
        "alpha": 1.0,
        "beta": 0.5,
        "separation": 5.0,
    }

    ALPHA_SCAN = dict(
        DISCRETE,
        dataset={"size": 2},
        alpha_scan={"start": 1.0, "stop": 5.0, "step": 0.1},
        trials=5,
    )

    MOLECULE = dict(DISCRETE, n_qubits=5)

    MIXED = {
        "n_qubits": 5,
        "depth": 10,
        "model_stages": [{"optimizer": "adam", "lr": 0.5, "epochs": 258}],
        "extremizer": {
            "lr": 0.01,
            "epochs": 100,
            "direction": "minimize",
            "bounds": [-1.0, 1.0],
        },
        "dataset": {
            "points_per_n": 21,
            "exclusion_center": 0.25,
            "exclusion_half_width": 0.05,
        },
        "alpha": None,
        "beta": 0.0,
    }

    @classmethod
    def for_kind(cls, kind: ExperimentKind) -> dict:
        table = {
            ExperimentKind.FIT: cls.FIT,
            ExperimentKind.DQC: cls.DQC,
            ExperimentKind.ALPHA_SCAN: cls.ALPHA_SCAN,
            ExperimentKind.MOLECULE: cls.MOLECULE,
            ExperimentKind.MIXED: cls.MIXED,
        }
        base = {
            "trials": cls.TRIALS,
            "seed": cls.SEED,
            "thresholds": list(cls.THRESHOLDS),
            "fixed_threshold": cls.FIXED_THRESHOLD,
        }
        base.update(copy.deepcopy(table.get(kind, cls.DISCRETE)))
        return base
