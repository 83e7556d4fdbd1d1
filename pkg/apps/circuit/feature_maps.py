"""Feature maps quânticos.

Qubits são indexados a partir de 0 no código; a ordem j da torre de
Chebyshev começa em 1 (qubit 0 recebe 2·1·arccos x).
"""

from typing import Tuple

from apps.circuit.ir import CircuitIR, Operation, ParamBinding
from apps.sim.gates import GateKind
from tools.exceptions import BindingError
from tools.utils import validate_bits


def domain_rescaling(
    domain: Tuple[float, float], span: float
) -> Tuple[float, float]:
    """(scale, shift) que leva ``domain`` em [−span, span].

    Example:
        >>> domain_rescaling((0.0, 1.0), 0.9)
        (1.8, -0.9)

    """
    lo, hi = domain
    if not hi > lo or not 0 < span <= 1:
        raise BindingError(
            "Reescala inválida da torre.", domain=list(domain), span=span
        )
    scale = 2 * span / (hi - lo)
    return scale, -span - scale * lo


def build_chebyshev_tower(
    n_qubits: int,
    feature: int = 0,
    offset: int = 0,
    n_total: int = 0,
    scale: float = 1.0,
    shift: float = 0.0,
) -> CircuitIR:
    """Torre de Chebyshev: RY(2j·arccos x) no qubit j, j = 1..n.

    Com ansatz identidade o valor esperado de Σ Z vale Σ_j T_{2j}(x).

    Args:
        n_qubits: Qubits da torre.
        feature: Índice da feature contínua x.
        offset: Primeiro qubit da torre dentro do registrador.
        n_total: Tamanho do registrador (padrão: ``offset + n_qubits``).
        scale: Fator aplicado a x antes do arccos.
        shift: Deslocamento somado depois de ``scale``. Com
            ``domain_rescaling`` o domínio fica longe de x = ±1, onde
            dφ/dx diverge.

    """
    if n_qubits < 1:
        raise BindingError("A torre precisa de ao menos 1 qubit.")
    ops = tuple(
        Operation(
            GateKind.RY,
            (offset + j - 1,),
            ParamBinding.chebyshev(feature, j, scale, shift),
        )
        for j in range(1, n_qubits + 1)
    )
    return CircuitIR(
        n_total or offset + n_qubits, ops, n_features=feature + 1
    )


def build_digital_encoding(bits: str) -> CircuitIR:
    """Codificação digital literal: X em cada qubit cujo bit vale 1."""
    validate_bits(bits)
    if not bits:
        raise BindingError("Bitstring vazia.")
    ops = tuple(
        Operation(GateKind.X, (index,))
        for index, bit in enumerate(bits)
        if bit == "1"
    )
    return CircuitIR(len(bits), ops)


def build_digital_feature_map(
    n_qubits: int, feature: int = 0, offset: int = 0, n_total: int = 0
) -> CircuitIR:
    """Codificação digital ligada a uma feature inteira.

    Cada qubit recebe RY(π·b), onde b é o bit correspondente do inteiro
    (qubit ``offset`` = bit mais significativo). Partindo de |0⟩, RY(π)
    produz exatamente |1⟩, então o estado é o mesmo da codificação por X,
    mas todo um conjunto de treino roda no mesmo circuito.
    """
    ops = tuple(
        Operation(
            GateKind.RY,
            (offset + position,),
            ParamBinding.bit(feature, position, n_qubits),
        )
        for position in range(n_qubits)
    )
    return CircuitIR(
        n_total or offset + n_qubits, ops, n_features=feature + 1
    )


def build_mixed_feature_map(n_cont: int, n_disc: int) -> CircuitIR:
    """Torre de Chebyshev (feature 0 = x) seguida de codificação digital
    (feature 1 = n, base zero) nos últimos ``n_disc`` qubits."""
    if n_cont < 1 or n_disc < 1:
        raise BindingError(
            "Mapa misto precisa de qubits contínuos e discretos.",
            n_cont=n_cont,
            n_disc=n_disc,
        )
    total = n_cont + n_disc
    tower = build_chebyshev_tower(n_cont, feature=0, n_total=total)
    digital = build_digital_feature_map(
        n_disc, feature=1, offset=n_cont, n_total=total
    )
    return tower.compose(digital)
