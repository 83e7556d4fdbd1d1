from rest_framework import serializers


class StrictSerializer(serializers.Serializer):
    """Serializer que rejeita chaves desconhecidas.

    O DRF ignora silenciosamente campos não declarados; para arquivos de
    configuração isso esconde erros de digitação, então qualquer chave
    extra vira erro de validação.
    """

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ["Chave desconhecida."] for key in unknown}
                )
        return super().to_internal_value(data)


def validate_thresholds(values):
    """Thresholds de probabilidade devem estar em (0, 1]."""
    for value in values:
        if not 0.0 < value <= 1.0:
            raise serializers.ValidationError(
                f"Threshold {value} fora do intervalo (0, 1]."
            )
    return values


def validate_positive(value):
    if not value > 0:
        raise serializers.ValidationError(f"Valor deve ser > 0: {value}.")
    return value
