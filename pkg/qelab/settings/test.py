from .base import *  # noqa: F401,F403
from .base import LOGGING

QEL_WORKERS = 1

# Sem arquivo rotativo nos testes; o caplog do pytest captura os registros
for _name in ("apps", "tools"):
    LOGGING["loggers"][_name]["handlers"] = ["console"]
    LOGGING["loggers"][_name]["level"] = "WARNING"
    LOGGING["loggers"][_name]["propagate"] = True
LOGGING["loggers"]["django"]["handlers"] = ["console"]
