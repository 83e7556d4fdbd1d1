"""Configuração de experimentos: validação (DRF) e forma resolvida.

O arquivo JSON do usuário é mesclado sobre ``ExperimentDefaults`` do
experimento escolhido, validado por ``ExperimentConfigSerializer`` (chaves
desconhecidas são rejeitadas) e convertido em ``ExperimentConfig``, que é
imutável e serializável para os workers.
"""

from typing import Any, Dict, Optional

from rest_framework import serializers

from apps.experiments.constants import ExperimentDefaults, ExperimentKind
from apps.experiments.specs import ExperimentConfig
from apps.problems.constants import Direction
from apps.sim.constants import SimConstants
from apps.train.optimizers import OptimizerKind
from tools.exceptions import ConfigError
from tools.validators import (
    StrictSerializer,
    validate_positive,
    validate_thresholds,
)

DIRECTIONS = [direction.value for direction in Direction]


class StageSerializer(StrictSerializer):
    optimizer = serializers.ChoiceField(
        choices=[kind.value for kind in OptimizerKind]
    )
    lr = serializers.FloatField(validators=[validate_positive])
    epochs = serializers.IntegerField(min_value=1)
    history = serializers.IntegerField(min_value=0, required=False)


class ExtremizerSerializer(StrictSerializer):
    lr = serializers.FloatField(validators=[validate_positive])
    epochs = serializers.IntegerField(min_value=1)
    direction = serializers.ChoiceField(
        choices=DIRECTIONS, required=False, allow_null=True
    )
    x0 = serializers.ListField(
        child=serializers.FloatField(), required=False, allow_null=True
    )
    bounds = serializers.ListField(
        child=serializers.FloatField(),
        min_length=2,
        max_length=2,
        required=False,
        allow_null=True,
    )
    top_k = serializers.IntegerField(min_value=1, required=False)

    def validate_bounds(self, value):
        if value is not None and value[0] > value[1]:
            raise serializers.ValidationError("Limites invertidos.")
        return value


class DatasetSerializer(StrictSerializer):
    size = serializers.IntegerField(
        min_value=1, required=False, allow_null=True
    )
    sizes = serializers.ListField(
        child=serializers.IntegerField(min_value=1),
        required=False,
        allow_empty=False,
    )
    fraction = serializers.FloatField(
        max_value=1.0, required=False, validators=[validate_positive]
    )
    exclusion_center = serializers.FloatField(required=False, allow_null=True)
    exclusion_half_width = serializers.FloatField(
        min_value=0.0, required=False
    )
    points_per_n = serializers.IntegerField(min_value=1, required=False)
    collocation = serializers.IntegerField(min_value=1, required=False)


class AlphaScanSerializer(StrictSerializer):
    start = serializers.FloatField(min_value=0.0)
    stop = serializers.FloatField(min_value=0.0)
    step = serializers.FloatField(validators=[validate_positive])

    def validate(self, attrs):
        if attrs["stop"] < attrs["start"]:
            raise serializers.ValidationError(
                "alpha_scan.stop deve ser >= start."
            )
        return attrs


class ExperimentConfigSerializer(StrictSerializer):
    experiment = serializers.ChoiceField(
        choices=[kind.value for kind in ExperimentKind]
    )
    n_qubits = serializers.IntegerField(
        min_value=1, max_value=SimConstants.MAX_QUBITS
    )
    depth = serializers.IntegerField(min_value=1, allow_null=True)
    model_stages = StageSerializer(many=True)
    extremizer = ExtremizerSerializer()
    dataset = DatasetSerializer()
    trials = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0)
    alpha = serializers.FloatField(min_value=0.0, allow_null=True)
    beta = serializers.FloatField()
    thresholds = serializers.ListField(
        child=serializers.FloatField(),
        allow_empty=False,
        validators=[validate_thresholds],
    )
    fixed_threshold = serializers.FloatField(
        validators=[lambda value: validate_thresholds([value])]
    )
    separation = serializers.FloatField(min_value=0.0, required=False)
    init_scale = serializers.FloatField(min_value=0.0, required=False)
    feature_span = serializers.FloatField(
        max_value=1.0,
        required=False,
        allow_null=True,
        validators=[validate_positive],
    )
    alpha_scan = AlphaScanSerializer(required=False)
    out = serializers.CharField(required=False, allow_null=True)

    def validate(self, attrs):
        kind = ExperimentKind(attrs["experiment"])
        n_qubits = attrs["n_qubits"]
        if kind == ExperimentKind.MOLECULE and n_qubits != 5:
            raise serializers.ValidationError(
                {"n_qubits": "A molécula tem exatamente 5 substituintes."}
            )
        if kind == ExperimentKind.MIXED and n_qubits < 3:
            raise serializers.ValidationError(
                {"n_qubits": "O modelo misto precisa de ao menos 3 qubits."}
            )
        if kind == ExperimentKind.ALPHA_SCAN and "alpha_scan" not in attrs:
            raise serializers.ValidationError(
                {"alpha_scan": "Obrigatório para alpha_scan."}
            )
        return attrs


def merge(base: dict, override: dict) -> dict:
    """Mescla dicts aninhados; listas e escalares são substituídos."""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(
    data: Optional[Dict[str, Any]] = None,
    experiment: Optional[str] = None,
    **overrides: Any,
) -> ExperimentConfig:
    """Valida uma configuração parcial e a completa com os padrões.

    Args:
        data: Conteúdo do arquivo de configuração (pode omitir chaves).
        experiment: Experimento pedido na linha de comando; precisa
            coincidir com ``data["experiment"]`` quando ambos existem.
        **overrides: ``trials``, ``seed``, ``out``; ``None`` é ignorado.

    Raises:
        ConfigError: com os erros de validação do serializer.

    """
    data = dict(data or {})
    requested = experiment or data.get("experiment")
    if experiment and data.get("experiment") not in (None, experiment):
        raise ConfigError(
            "Experimento do arquivo difere do pedido na linha de comando.",
            requested=experiment,
            config=data.get("experiment"),
        )
    try:
        kind = ExperimentKind(requested)
    except ValueError as exc:
        raise ConfigError(
            f"Experimento desconhecido: {requested!r}.",
            choices=[choice.value for choice in ExperimentKind],
        ) from exc
    merged = merge(ExperimentDefaults.for_kind(kind), data)
    merged["experiment"] = kind.value
    merged.update(
        {key: value for key, value in overrides.items() if value is not None}
    )
    serializer = ExperimentConfigSerializer(data=merged)
    if not serializer.is_valid():
        raise ConfigError(
            "Configuração de experimento inválida.",
            errors=serializer.errors,
        )
    return ExperimentConfig.from_validated(serializer.validated_data)
