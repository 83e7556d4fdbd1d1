"""Retry exponencial para gravação de artefatos com Tenacity.

Falhas transitórias de sistema de arquivos (NFS, disco de rede) são
repetidas algumas vezes antes de virarem ``EmissionError`` com o caminho
envolvido.
"""

import logging
from functools import wraps
from pathlib import Path
from typing import Callable, TypeVar, Union

from tenacity import (
    RetryError,
    before_sleep_log,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from tools.exceptions import EmissionError

logger = logging.getLogger(__name__)

T = TypeVar("T")


class RetryConfig:
    """Configurações centralizadas de retry."""

    FILE_WRITE = {
        "stop": stop_after_attempt(3),
        "wait": wait_exponential(multiplier=0.2, min=0.1, max=2),
        "retry": retry_if_exception_type(OSError),
        "before_sleep": before_sleep_log(logger, logging.WARNING),
    }


def file_retry(func: Callable[..., T]) -> Callable[..., T]:
    """Decorator para gravações em disco com retry automático.

    A função decorada deve receber o caminho de destino como primeiro
    argumento. Esgotadas as tentativas, o ``OSError`` original vira um
    ``EmissionError`` carregando o caminho.

    Uso:
        @file_retry
        def write_text(path, text):
            Path(path).write_text(text)
    """
    retrying = retry(**RetryConfig.FILE_WRITE)(func)

    @wraps(func)
    def wrapper(path: Union[str, Path], *args, **kwargs) -> T:
        try:
            return retrying(path, *args, **kwargs)
        except (OSError, RetryError) as exc:
            raise EmissionError(
                f"Falha ao gravar {path}: {exc}", path=str(path)
            ) from exc

    return wrapper


@file_retry
def write_text(path: Union[str, Path], text: str) -> Path:
    """Grava texto UTF-8 com quebras de linha ``\\n`` e retorna o caminho."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    return target
