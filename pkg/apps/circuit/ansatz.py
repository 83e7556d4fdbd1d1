import numpy as np

from apps.circuit.constants import CircuitConstants
from apps.circuit.ir import CircuitIR, Operation, ParamBinding
from apps.sim.gates import GateKind
from tools.exceptions import BindingError


def build_hea(n_qubits: int, depth: int) -> CircuitIR:
    """Hardware Efficient Ansatz.

    Cada camada aplica RY(θ) e RZ(θ) em todos os qubits (2n parâmetros
    novos) e depois uma cadeia linear de CNOTs (j -> j+1). Total de
    parâmetros: 2·n·depth. Com um único qubit não há entrelaçadores.

    Example:
        >>> build_hea(3, 3).n_variational
        18

    """
    if depth < 1:
        raise BindingError(f"Profundidade inválida: {depth}.", depth=depth)
    ops = []
    index = 0
    for _layer in range(depth):
        for qubit in range(n_qubits):
            ops.append(
                Operation(
                    GateKind.RY, (qubit,), ParamBinding.variational(index)
                )
            )
            ops.append(
                Operation(
                    GateKind.RZ,
                    (qubit,),
                    ParamBinding.variational(index + 1),
                )
            )
            index += 2
        for qubit in range(n_qubits - 1):
            ops.append(Operation(GateKind.CNOT, (qubit, qubit + 1)))
    return CircuitIR(n_qubits, tuple(ops), n_variational=index)


def identity_ansatz(n_qubits: int) -> CircuitIR:
    """Ansatz vazio (U_θ = I), usado em oráculos analíticos."""
    return CircuitIR(n_qubits)


def init_theta(
    n_params: int,
    rng: np.random.Generator,
    scale: float = CircuitConstants.THETA_INIT_SCALE,
) -> np.ndarray:
    """θ inicial i.i.d. uniforme em [-scale, scale]; o padrão 0.1 começa
    perto da identidade."""
    return rng.uniform(-scale, scale, size=n_params)
