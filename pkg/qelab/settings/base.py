import os
from pathlib import Path

import environ

env = environ.Env()

ROOT_DIR = Path(__file__).resolve().parent.parent.parent
APPS_DIR = ROOT_DIR / "apps"

# Variáveis opcionais do laboratório (lidas antes de qualquer env())
_ENV_PATH = ROOT_DIR / ".envs" / ".local" / ".qel"
if _ENV_PATH.exists():
    environ.Env.read_env(str(_ENV_PATH))

# Não há views nem sessões; a chave só satisfaz o Django
SECRET_KEY = env("DJANGO_SECRET_KEY", default="qelab-sem-segredo")

DEBUG = env.bool("DJANGO_DEBUG", False)  # type: ignore

ALLOWED_HOSTS: list = []

LOCAL_APPS = [
    "apps.sim",
    "apps.circuit",
    "apps.diff",
    "apps.train",
    "apps.extremal",
    "apps.problems",
    "apps.experiments",
]

THIRD_PARTY_APPS = [
    # Django Rest Framework (serializers de configuração)
    "rest_framework",
]

DJANGO_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
]

INSTALLED_APPS = LOCAL_APPS + THIRD_PARTY_APPS + DJANGO_APPS

# Tudo é gravado em arquivos; nenhum banco é usado
DATABASES: dict = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "pt-br"

TIME_ZONE = "America/Recife"

USE_TZ = True

USE_I18N = True

"""
Experimentos
"""
# Processos do pool de trials; 1 roda tudo no processo atual
QEL_WORKERS = env.int("QEL_WORKERS", default=os.cpu_count() or 1)

QEL_OUTPUT_DIR = env("QEL_OUTPUT_DIR", default="runs")

QEL_LOG_LEVEL = env("QEL_LOG_LEVEL", default="INFO")

"""
Logging
"""
LOG_ROOT = Path(__file__).resolve().parent.parent / "logs"

LOG_FILE = "/qel.log"

LOG_PATH = f"{LOG_ROOT}{LOG_FILE}"

if not os.path.exists(LOG_ROOT):
    os.mkdir(LOG_ROOT)

LOGGING = {
    "formatters": {
        "verbose": {
            "format": (
                "[{asctime}] {levelname} {module} {process:d} "
                "{thread:d} {message}"
            ),
            "style": "{",
        },
    },
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {
        "file": {
            "level": "INFO",
            "class": "logging.handlers.RotatingFileHandler",
            "filename": LOG_PATH,
            "maxBytes": 1024 * 1024 * 5,  # 5MB
            "backupCount": 5,
            "formatter": "verbose",
        },
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["file"],
            "level": "INFO",
            "propagate": True,
        },
        "apps": {
            "handlers": ["file", "console"],
            "level": QEL_LOG_LEVEL,
            "propagate": False,
        },
        "tools": {
            "handlers": ["file", "console"],
            "level": QEL_LOG_LEVEL,
            "propagate": False,
        },
    },
}
