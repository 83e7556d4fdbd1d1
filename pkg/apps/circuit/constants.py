class CircuitConstants(object):
    # Features contínuas são grampeadas em [-1 + ε, 1 - ε] antes do arccos
    CLAMP_EPS = 1e-7

    # Inicialização de θ: uniforme em [-THETA_INIT_SCALE, THETA_INIT_SCALE]
    THETA_INIT_SCALE = 0.1

    DEFAULT_ALPHA = 1.0
    DEFAULT_BETA = 0.5
