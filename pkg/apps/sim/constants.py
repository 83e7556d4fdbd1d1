class SimConstants(object):
    # Guarda de memória do vetor de estado denso (2^24 amplitudes complexas)
    MIN_QUBITS = 1
    MAX_QUBITS = 24

    NORM_TOLERANCE = 1e-12
