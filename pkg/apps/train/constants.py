class TrainConstants(object):
    ADAM_BETA1 = 0.9
    ADAM_BETA2 = 0.999
    ADAM_EPS = 1e-8

    LBFGS_HISTORY = 10
    # pares (s, y) com s·y abaixo disso são descartados
    LBFGS_CURVATURE_EPS = 1e-10
    # busca em linha: decréscimo suficiente c1 e fator de redução do passo
    LBFGS_ARMIJO_C1 = 1e-4
    LBFGS_BACKTRACK = 0.5
    LBFGS_MAX_BACKTRACKS = 20

    BOUNDARY_WEIGHT = 1.0
    DEFAULT_COLLOCATION = 50
