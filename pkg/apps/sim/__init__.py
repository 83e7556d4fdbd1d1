from apps.sim.gates import Gate, GateKind
from apps.sim.statevector import (
    StateVector,
    apply_gate,
    expectation_z_sum,
    init_zero,
    probabilities,
    run_circuit,
    sample,
)
