"""Execução de experimentos: um trial por seed, em paralelo.

Cada trial é uma função pura de (configuração, seed, tamanho de treino):
gera a instância e o conjunto de treino, treina o modelo,
extremiza a saída e pontua contra o oráculo. Falhas ficam registradas
no próprio ``TrialReport`` e nunca interrompem a varredura.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
import pandas as pd

from apps.circuit import (
    Observable,
    QuantumModel,
    build_chebyshev_tower,
    build_digital_feature_map,
    build_hea,
    build_mixed_feature_map,
    domain_rescaling,
    evaluate_batch,
    init_theta,
)
from apps.experiments.constants import (
    EmissionConstants,
    ExperimentKind,
    TrialStatus,
)
from apps.experiments.reports import Rows, TrialReport, aggregate
from apps.experiments.specs import ExperimentConfig
from apps.extremal import (
    extremize_continuous,
    extremize_mixed,
    sample_extremizer,
    total_optimal_probability,
    train_extremizer_discrete,
)
from apps.extremal.constants import ExtremalConstants
from apps.problems import (
    Direction,
    MixedFunctionSpec,
    brute_force_optimum,
    dqc_ode_spec,
    gen_correlation_chain,
    gen_maxcut_clusters,
    gen_molecule,
    make_training_set,
    ode_analytic,
    target_sin5x,
)
from apps.problems.constants import ProblemConstants
from apps.train import Dataset, TrainReport, fit
from tools.exceptions import QELError
from tools.utils import make_rng, timed

logger = logging.getLogger(__name__)

Task = Tuple[ExperimentConfig, int, Optional[int]]


@dataclass
class ExperimentRun:
    config: ExperimentConfig
    reports: List[TrialReport]
    tables: Dict[str, pd.DataFrame]

    @property
    def failed(self) -> int:
        return sum(1 for report in self.reports if not report.completed)


def loss_rows(training: TrainReport) -> Rows:
    return [
        {"epoch": epoch, "loss": float(loss)}
        for epoch, loss in enumerate(training.loss_trajectory)
    ]


def objective_rows(trajectory: Sequence[float]) -> Rows:
    return [
        {"epoch": epoch, "objective": float(value)}
        for epoch, value in enumerate(trajectory)
    ]


def _theta(config: ExperimentConfig, rng: np.random.Generator):
    return init_theta(
        2 * config.n_qubits * config.depth, rng, config.init_scale
    )


def _observable(config: ExperimentConfig, alpha: Optional[float] = None):
    return Observable(
        config.n_qubits,
        alpha=config.alpha if alpha is None else alpha,
        beta=config.beta,
    )


def _chebyshev_model(
    config: ExperimentConfig, rng, domain: Tuple[float, float]
) -> QuantumModel:
    """Torre + HEA; com ``feature_span`` o domínio é reescalado para
    [−span, span] antes do arccos."""
    n = config.n_qubits
    scale, shift = 1.0, 0.0
    if config.feature_span:
        scale, shift = domain_rescaling(domain, config.feature_span)
    return QuantumModel(
        build_chebyshev_tower(n, scale=scale, shift=shift),
        build_hea(n, config.depth),
        _observable(config),
        _theta(config, rng),
    )


def _digital_model(
    config: ExperimentConfig, theta, alpha: Optional[float] = None
) -> QuantumModel:
    n = config.n_qubits
    return QuantumModel(
        build_digital_feature_map(n),
        build_hea(n, config.depth),
        _observable(config, alpha),
        theta,
    )


def run_fit_trial(config: ExperimentConfig, seed: int, _size) -> TrialReport:
    """sin(5x) em [0, 1] sem a janela do máximo, seguido de subida em x."""
    rng = make_rng(seed)
    size = config.dataset.size or 20
    dataset = make_training_set(
        target_sin5x, size, exclusion=config.dataset.exclusion
    )
    model = _chebyshev_model(config, rng, (0.0, 1.0))
    training = fit(model, dataset, config.model_stages)
    result = extremize_continuous(
        model, config.extremizer.build(seed, Direction.MAXIMIZE)
    )
    grid = np.linspace(0.0, 1.0, EmissionConstants.GRID_POINTS)
    grid_values = evaluate_batch(model, grid)
    curve_x = np.linspace(0.0, 1.0, EmissionConstants.CURVE_POINTS)
    curve = [
        {"x": float(x), "true": float(true), "model": float(value)}
        for x, true, value in zip(
            curve_x, target_sin5x(curve_x), evaluate_batch(model, curve_x)
        )
    ]
    extremizer = [
        {"epoch": epoch, "x": x, "value": value}
        for epoch, (x, value) in enumerate(
            zip(result.inputs, result.trajectory)
        )
    ]
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        training=training.to_dict(),
        extremal=result.to_dict(),
        metrics={
            "grid_max": float(grid_values.max()),
            "grid_argmax": float(grid[np.argmax(grid_values)]),
            "max_training_output": float(
                evaluate_batch(model, dataset.inputs).max()
            ),
            "true_max": 1.0,
            "true_argmax": ProblemConstants.SIN5X_ARGMAX,
        },
        tables={
            "curve": curve,
            "loss": loss_rows(training),
            "extremizer": extremizer,
        },
    )


def run_dqc_trial(config: ExperimentConfig, seed: int, _size) -> TrialReport:
    """Resíduo da EDO na colocação e extremização da solução."""
    rng = make_rng(seed)
    ode = dqc_ode_spec(config.dataset.collocation or 50)
    model = _chebyshev_model(config, rng, ode.domain)
    training = fit(model, ode, config.model_stages)
    result = extremize_continuous(
        model, config.extremizer.build(seed, Direction.MAXIMIZE)
    )
    grid = np.linspace(0.0, 1.0, EmissionConstants.GRID_POINTS)
    exact = ode_analytic(grid)
    x_exact = float(grid[np.argmax(exact)])
    f_exact = float(exact.max())
    model_grid = evaluate_batch(model, grid)
    collocation = ode.grid()
    deviation = np.abs(
        evaluate_batch(model, collocation) - ode_analytic(collocation)
    )
    curve_x = np.linspace(0.0, 1.0, EmissionConstants.CURVE_POINTS)
    analytic = ode_analytic(curve_x)
    predicted = evaluate_batch(model, curve_x)
    curve = [
        {
            "x": float(x),
            "analytic": float(a),
            "model": float(m),
            "deviation": float(abs(m - a)),
        }
        for x, a, m in zip(curve_x, analytic, predicted)
    ]
    extremizer = [
        {
            "epoch": epoch,
            "x": x,
            "value": value,
            "x_error": abs(x - x_exact),
            "value_error": abs(value - f_exact),
        }
        for epoch, (x, value) in enumerate(
            zip(result.inputs, result.trajectory)
        )
    ]
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        training=training.to_dict(),
        extremal=result.to_dict(),
        metrics={
            "x_exact": x_exact,
            "f_exact": f_exact,
            "model_argmax": float(grid[np.argmax(model_grid)]),
            "model_max": float(model_grid.max()),
            "max_deviation": float(deviation.max()),
        },
        tables={
            "curve": curve,
            "loss": loss_rows(training),
            "extremizer": extremizer,
        },
    )


def make_instance(config: ExperimentConfig, rng: np.random.Generator):
    """Instância discreta do experimento, sorteada com ``rng``."""
    kind = config.experiment
    n = config.n_qubits
    if kind in (ExperimentKind.MAXCUT, ExperimentKind.ALPHA_SCAN):
        return gen_maxcut_clusters(n, config.separation, rng)
    if kind == ExperimentKind.CHAIN2:
        return gen_correlation_chain(n, 2, rng)
    if kind == ExperimentKind.CHAIN3:
        return gen_correlation_chain(n, 3, rng)
    return gen_molecule(rng)


class DiscreteSetup(NamedTuple):
    instance: Any
    direction: Direction
    optimal_set: List[str]
    optimal_value: float
    dataset: Dataset
    theta: np.ndarray
    chi_seed: int


def discrete_setup(
    config: ExperimentConfig, seed: int, size: int
) -> DiscreteSetup:
    """Sorteios de um trial discreto, sempre nesta ordem: instância,
    conjunto de treino, θ inicial e seed do χ."""
    rng = make_rng(seed)
    instance = make_instance(config, rng)
    direction = config.extremizer.direction or instance.default_direction
    optimal_set, optimal_value = brute_force_optimum(instance, direction)
    dataset = make_training_set(instance, size, rng=rng)
    theta = _theta(config, rng)
    chi_seed = int(rng.integers(2**31))
    return DiscreteSetup(
        instance,
        direction,
        optimal_set,
        optimal_value,
        dataset,
        theta,
        chi_seed,
    )


def run_discrete_trial(
    config: ExperimentConfig, seed: int, size: int
) -> TrialReport:
    """Pipeline discreto completo: treino, EFM, amostragem e oráculo."""
    setup = discrete_setup(config, seed, size)
    model = _digital_model(config, setup.theta)
    training = fit(model, setup.dataset, config.model_stages)
    efm = train_extremizer_discrete(
        model, config.extremizer.build(setup.chi_seed, setup.direction)
    )
    result = sample_extremizer(efm, config.extremizer.top_k)
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        training_size=size,
        instance=setup.instance.to_dict(),
        training=training.to_dict(),
        extremal=result.to_dict(),
        optimal_set=setup.optimal_set,
        optimal_value=float(setup.optimal_value),
        total_optimal_probability=total_optimal_probability(
            result, setup.optimal_set
        ),
        metrics={"direction": setup.direction.value},
        tables={
            "loss": loss_rows(training),
            "extremizer": objective_rows(result.trajectory),
        },
    )


def run_alpha_scan_trial(
    config: ExperimentConfig, seed: int, size: int
) -> TrialReport:
    """Mesma instância, treino e inicializações para cada α."""
    setup = discrete_setup(config, seed, size)
    optimal = set(setup.optimal_set)
    rows: Rows = []
    for alpha in config.alphas:
        model = _digital_model(config, setup.theta, alpha)
        training = fit(model, setup.dataset, config.model_stages)
        efm = train_extremizer_discrete(
            model, config.extremizer.build(setup.chi_seed, setup.direction)
        )
        result = sample_extremizer(efm, config.extremizer.top_k)
        top = [label for label, _p in result.top_candidates[:2]]
        rows.append(
            {
                "alpha": alpha,
                "final_loss": float(training.final_loss),
                "total_optimal_probability": total_optimal_probability(
                    result, setup.optimal_set
                ),
                "top1_optimal": bool(top and top[0] in optimal),
                "top2_optimal": bool(
                    len(top) == 2 and all(label in optimal for label in top)
                ),
                "candidates": " ".join(top),
            }
        )
    best = max(rows, key=lambda row: row["total_optimal_probability"])
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        training_size=size,
        instance=setup.instance.to_dict(),
        optimal_set=setup.optimal_set,
        optimal_value=float(setup.optimal_value),
        total_optimal_probability=best["total_optimal_probability"],
        metrics={
            "best_alpha": best["alpha"],
            "baseline_probability": rows[0]["total_optimal_probability"],
        },
        tables={"alpha_scan": rows},
    )


def run_mixed_trial(
    config: ExperimentConfig, seed: int, _size
) -> TrialReport:
    """Modelo misto (x, n) e extremização conjunta; o alvo é o mínimo."""
    rng = make_rng(seed)
    spec = MixedFunctionSpec()
    dataset = make_training_set(
        spec,
        config.dataset.points_per_n or ProblemConstants.MIXED_POINTS_PER_N,
        exclusion=config.dataset.exclusion,
        scale=False,
    )
    n = config.n_qubits
    model = QuantumModel(
        build_mixed_feature_map(
            n - ExtremalConstants.MIXED_DISCRETE_QUBITS,
            ExtremalConstants.MIXED_DISCRETE_QUBITS,
        ),
        build_hea(n, config.depth),
        _observable(config),
        _theta(config, rng),
    )
    training = fit(model, dataset, config.model_stages)
    result = extremize_mixed(
        model, config.extremizer.build(seed, Direction.MINIMIZE)
    )
    x_exact, n_exact, f_exact = spec.grid_optimum()
    x_star = result.best_input
    n_star = int(result.top_candidates[0][0])
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        instance=spec.to_dict(),
        training=training.to_dict(),
        extremal=result.to_dict(),
        optimal_set=[str(n_exact)],
        optimal_value=f_exact,
        total_optimal_probability=result.distribution[str(n_exact)],
        metrics={"x_error": abs(x_star - x_exact)},
        tables={
            "loss": loss_rows(training),
            "extremizer": [
                {"epoch": epoch, "x": x, "objective": value}
                for epoch, (x, value) in enumerate(
                    zip(result.inputs, result.trajectory)
                )
            ],
            "n_distribution": [
                {"n": int(key), "probability": value}
                for key, value in sorted(result.distribution.items())
            ],
            "result": [
                {
                    "x_star": x_star,
                    "n_star": n_star,
                    "value": float(spec(x_star, n_star)),
                    "x_exact": x_exact,
                    "n_exact": n_exact,
                    "f_exact": f_exact,
                }
            ],
        },
    )


TRIALS: Dict[ExperimentKind, Callable[..., TrialReport]] = {
    ExperimentKind.FIT: run_fit_trial,
    ExperimentKind.DQC: run_dqc_trial,
    ExperimentKind.MAXCUT: run_discrete_trial,
    ExperimentKind.CHAIN2: run_discrete_trial,
    ExperimentKind.CHAIN3: run_discrete_trial,
    ExperimentKind.MOLECULE: run_discrete_trial,
    ExperimentKind.ALPHA_SCAN: run_alpha_scan_trial,
    ExperimentKind.MIXED: run_mixed_trial,
}


def run_trial(task: Task) -> TrialReport:
    """Executa um trial capturando qualquer falha no relatório."""
    config, seed, size = task
    with timed(f"trial {seed}") as clock:
        try:
            report = TRIALS[config.experiment](config, seed, size)
        except QELError as exc:
            report = _failed(config, seed, size, exc.as_record())
        except Exception as exc:
            report = _failed(
                config,
                seed,
                size,
                {"error": exc.__class__.__name__, "message": str(exc)},
            )
    report.wall_time = clock["seconds"]
    if report.completed:
        logger.info(
            f"Trial {report.label} de {config.experiment.value} concluído "
            f"em {report.wall_time:.2f}s."
        )
    return report


def _failed(config, seed, size, record) -> TrialReport:
    logger.error(
        f"Trial seed={seed} de {config.experiment.value} falhou: "
        f"{record['message']}"
    )
    return TrialReport(
        experiment=config.experiment.value,
        seed=seed,
        training_size=size,
        status=TrialStatus.FAILED,
        error=record,
    )


def trial_tasks(config: ExperimentConfig) -> List[Task]:
    """Tarefas em ordem determinística: tamanho de treino, depois seed."""
    sizes: Sequence[Optional[int]] = (None,)
    if config.experiment.discrete:
        sizes = config.dataset.training_sizes(config.n_qubits)
    return [(config, seed, size) for size in sizes for seed in config.seeds]


def run_experiment(
    config: ExperimentConfig, workers: int = 1
) -> ExperimentRun:
    """Roda todos os trials e agrega.

    Args:
        config: Configuração resolvida.
        workers: Processos do pool; 1 executa no processo atual.

    Returns:
        ExperimentRun: relatórios na ordem das tarefas e tabelas
            agregadas (``summary`` e as específicas do experimento).

    """
    tasks = trial_tasks(config)
    logger.info(
        f"Experimento {config.experiment.value}: {len(tasks)} trials, "
        f"{workers} worker(s)."
    )
    with timed(config.experiment.value) as clock:
        if workers <= 1 or len(tasks) == 1:
            reports = [run_trial(task) for task in tasks]
        else:
            with ProcessPoolExecutor(
                max_workers=min(workers, len(tasks))
            ) as pool:
                reports = list(pool.map(run_trial, tasks))
    tables = aggregate(
        config.experiment,
        reports,
        config.thresholds,
        config.fixed_threshold,
    )
    run = ExperimentRun(config, reports, tables)
    logger.info(
        f"Experimento {config.experiment.value} finalizado em "
        f"{clock['seconds']:.1f}s ({run.failed} falha(s))."
    )
    return run
