import math


class ExtremalConstants(object):
    CONTINUOUS_LR = 0.2
    CONTINUOUS_EPOCHS = 100

    DISCRETE_LR = 0.1
    DISCRETE_EPOCHS = 150
    CHI_INIT_SCALE = 0.1

    MIXED_LR = 0.01
    MIXED_EPOCHS = 100
    # x = 0 e superposição uniforme dos quatro valores de n
    MIXED_START = (0.0, math.pi / 2, math.pi / 2, math.pi / 2)
    MIXED_DISCRETE_QUBITS = 2

    DEFAULT_TOP_K = 5
