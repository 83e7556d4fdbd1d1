from .base import *  # noqa: F401,F403
from .base import LOGGING, env

DEBUG = True

LOGGING["loggers"]["apps"]["level"] = env("QEL_LOG_LEVEL", default="DEBUG")
