"""Hierarquia de exceções do qelab.

Todas as falhas de domínio herdam de ``QELError`` e sabem se descrever
como um registro legível por máquina (``as_record``), usado pela CLI e
pelos relatórios de trial.
"""

from typing import Any, Dict


class QELError(Exception):
    """Erro base do projeto."""

    def __init__(self, message: str, **context: Any):
        self.message = message
        self.context = context
        super().__init__(message)

    def as_record(self) -> Dict[str, Any]:
        """Retorna o erro como dict serializável em JSON."""
        record: Dict[str, Any] = {
            "error": self.__class__.__name__,
            "message": self.message,
        }
        record.update(
            {key: _jsonable(value) for key, value in self.context.items()}
        )
        return record


class CapacityError(QELError):
    """Número de qubits fora da faixa suportada pelo simulador denso."""


class GateError(QELError):
    """Porta com alvos inválidos ou tipo desconhecido."""


class BindingError(QELError):
    """Features ou parâmetros θ ausentes, sobrando ou com aridade errada."""


class ShiftRuleError(QELError):
    """Parâmetro variacional em porta sem regra de deslocamento."""


class DatasetError(QELError):
    """Conjunto de dados vazio, degenerado ou impossível de montar."""


class TrainingError(QELError):
    """Falha numérica durante o treino (NaN em perda ou gradiente)."""

    def __init__(self, message: str, epoch: int, **context: Any):
        self.epoch = epoch
        super().__init__(message, epoch=epoch, **context)


class FrozenModelError(QELError):
    """Violação do contrato de congelamento de θ."""


class ProblemError(QELError):
    """Argumentos inválidos para um gerador ou função de custo."""


class EmissionError(QELError):
    """Falha de I/O ao gravar artefatos de um experimento."""

    def __init__(self, message: str, path: str, **context: Any):
        self.path = path
        super().__init__(message, path=path, **context)


class ConfigError(QELError):
    """Configuração de experimento inválida."""


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    return str(value)
