from apps.extremal.config import ExtremizeConfig
from apps.extremal.continuous import extremize_continuous
from apps.extremal.discrete import (
    ExtremizerFeatureMap,
    build_extremizer_feature_map,
    extremizer_objective,
    sample_extremizer,
    train_extremizer_discrete,
)
from apps.extremal.mixed import (
    build_mixed_extremizer,
    extremize_mixed,
    mixed_layout,
    n_marginal,
)
from apps.extremal.results import (
    ExtremalResult,
    rank_candidates,
    total_optimal_probability,
)

__all__ = [
    "ExtremalResult",
    "ExtremizeConfig",
    "ExtremizerFeatureMap",
    "build_extremizer_feature_map",
    "build_mixed_extremizer",
    "extremize_continuous",
    "extremize_mixed",
    "extremizer_objective",
    "mixed_layout",
    "n_marginal",
    "rank_candidates",
    "sample_extremizer",
    "total_optimal_probability",
    "train_extremizer_discrete",
]
