import math


class DiffConstants(object):
    ROTATION_SHIFT = math.pi / 2

    # Regra de quatro termos para CRY (autovalores do gerador 0, ±1/2)
    CRY_NEAR = (math.sqrt(2) + 1) / (4 * math.sqrt(2))
    CRY_FAR = (math.sqrt(2) - 1) / (4 * math.sqrt(2))

    # Passo das diferenças finitas usadas como oráculo nos testes
    FD_STEP = 1e-5
