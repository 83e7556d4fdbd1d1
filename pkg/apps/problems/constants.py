import math
from enum import Enum


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    @property
    def sign(self) -> float:
        """+1 para maximizar, −1 para minimizar."""
        return 1.0 if self == Direction.MAXIMIZE else -1.0


class ProblemConstants(object):
    # Guarda da enumeração exaustiva (2^20 custos)
    MAX_BRUTE_FORCE_BITS = 20
    # Empates no ótimo: diferença relativa abaixo disso conta como igual
    TIE_TOLERANCE = 1e-9

    DEFAULT_SEPARATION = 5.0

    MOLECULE_SUBSTITUENTS = 5
    MOLECULE_LINEAR_STD = 1.0
    MOLECULE_QUADRATIC_STD = 2.0

    SIN5X_ARGMAX = math.pi / 10

    MIXED_DOMAIN = (-1.0, 1.0)
    MIXED_BRANCHES = 4
    MIXED_POINTS_PER_N = 21
    MIXED_GRID_POINTS = 2001
    MIXED_OPTIMUM = (0.25, 3, -0.6)

    ODE_DOMAIN = (0.0, 1.0)
    ODE_BOUNDARY = (0.0, 0.0)
