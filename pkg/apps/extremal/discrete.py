"""Extremização discreta com o Extremizer Feature Map (EFM).

O feature map do modelo é removido e trocado por um HEA novo U_𝒳 aplicado
a |0…0⟩. O objetivo ⟨𝒳|U_θ† M U_θ|𝒳⟩ (escalado) é otimizado em 𝒳 com θ
congelado; depois o estado |𝒳⟩ é medido na base computacional.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from apps.circuit.ansatz import build_hea
from apps.circuit.ir import BindingKind, CircuitIR, Transform
from apps.circuit.model import QuantumModel
from apps.diff.engine import op_derivatives
from apps.diff.gradients import variational_map
from apps.extremal.config import ExtremizeConfig
from apps.extremal.constants import ExtremalConstants
from apps.extremal.results import ExtremalResult, rank_candidates
from apps.sim.statevector import (
    GateSlot,
    expectation_block,
    probabilities_block,
    run_circuit,
    zero_block,
)
from apps.train.optimizers import adam_step, check_finite
from tools.exceptions import BindingError
from tools.utils import int_to_bits, make_rng

logger = logging.getLogger(__name__)


@dataclass
class ExtremizerFeatureMap:
    """HEA de profundidade N² com parâmetros próprios 𝒳 (``chi``)."""

    circuit: CircuitIR
    chi: np.ndarray
    trajectory: List[float] = field(default_factory=list)
    final_value: Optional[float] = None

    def __post_init__(self):
        self.chi = np.array(self.chi, dtype=float).reshape(-1)
        if self.chi.size != self.circuit.n_variational:
            raise BindingError(
                f"Esperados {self.circuit.n_variational} parâmetros 𝒳, "
                f"recebidos {self.chi.size}.",
                expected=self.circuit.n_variational,
                received=self.chi.size,
            )

    @property
    def n_qubits(self) -> int:
        return self.circuit.n_qubits

    def angles(self) -> np.ndarray:
        return self.circuit.bind((), self.chi)

    def state(self) -> np.ndarray:
        """|𝒳⟩ = U_𝒳|0…0⟩."""
        block = run_circuit(
            self.circuit.slots, self.angles(), self.n_qubits
        )
        return block[0]

    def probabilities(self) -> np.ndarray:
        return probabilities_block(self.state()[None, :])[0]


def build_extremizer_feature_map(
    n_qubits: int, chi: Optional[Sequence[float]] = None, rng=None
) -> ExtremizerFeatureMap:
    """EFM com 2·N·N² parâmetros; sem ``chi`` sorteia em [-0.1, 0.1]."""
    circuit = build_hea(n_qubits, n_qubits * n_qubits)
    if chi is None:
        scale = ExtremalConstants.CHI_INIT_SCALE
        rng = rng if rng is not None else make_rng(None)
        chi = rng.uniform(-scale, scale, size=circuit.n_variational)
    return ExtremizerFeatureMap(circuit, chi)


def require_digital(model: QuantumModel) -> None:
    """O modelo precisa ter sido treinado sobre codificação digital."""
    for op in model.feature_map.ops:
        binding = op.binding
        if binding.kind == BindingKind.FEATURE and (
            binding.transform != Transform.BIT
        ):
            raise BindingError(
                "Extremização discreta exige um feature map digital.",
                transform=binding.transform.value,
            )


def _joint_circuit(
    efm: ExtremizerFeatureMap, model: QuantumModel
) -> Tuple[Tuple[GateSlot, ...], np.ndarray]:
    """U_θ·U_𝒳 como (slots, ângulos)."""
    if efm.n_qubits != model.n_qubits:
        raise BindingError(
            "EFM e modelo com registradores diferentes.",
            efm=efm.n_qubits,
            model=model.n_qubits,
        )
    slots = efm.circuit.slots + model.ansatz.slots
    angles = np.concatenate([efm.angles(), model.ansatz_angles()])
    return slots, angles


def extremizer_objective_and_grad(
    model: QuantumModel, efm: ExtremizerFeatureMap
) -> Tuple[float, np.ndarray]:
    """𝒴(𝒳) escalado e seu gradiente em 𝒳 por parameter shift."""
    slots, angles = _joint_circuit(efm, model)
    op_indices, onehot = variational_map(efm.circuit)
    raw, derivs, _evaluations = op_derivatives(
        slots,
        angles,
        model.n_qubits,
        zero_block(model.n_qubits),
        op_indices,
    )
    value = float(model.observable.scale(raw[0]))
    return value, model.observable.gain * (derivs[0] @ onehot)


def extremizer_objective(
    model: QuantumModel, efm: ExtremizerFeatureMap
) -> float:
    slots, angles = _joint_circuit(efm, model)
    block = run_circuit(slots, angles, model.n_qubits)
    raw = expectation_block(block, model.n_qubits)
    return float(model.observable.scale(raw[0]))


def train_extremizer_discrete(
    model: QuantumModel, config: ExtremizeConfig
) -> ExtremizerFeatureMap:
    """Otimiza 𝒳 por ADAM com θ congelado.

    ``config.x0``, se dado, é o vetor 𝒳 inicial; senão 𝒳 é sorteado com
    ``config.seed``. A trajetória do objetivo fica em ``efm.trajectory``.

    Raises:
        FrozenModelError: se o modelo não estiver congelado.
        BindingError: se o feature map do modelo não for digital.

    """
    model.require_frozen()
    require_digital(model)
    efm = build_extremizer_feature_map(
        model.n_qubits, config.x0, make_rng(config.seed)
    )
    state = config.adam_state(efm.chi.size)
    sign = config.direction.sign
    trajectory: List[float] = []
    for epoch in range(config.epochs):
        value, grad = extremizer_objective_and_grad(model, efm)
        check_finite(value, grad, epoch)
        trajectory.append(value)
        logger.debug(f"EFM época {epoch}: objetivo {value:.6e}")
        efm.chi = adam_step(state, efm.chi, -sign * grad)
    efm.trajectory = trajectory
    efm.final_value = extremizer_objective(model, efm)
    logger.info(
        f"EFM treinado: objetivo {trajectory[0]:.6e} -> "
        f"{efm.final_value:.6e} em {config.epochs} épocas."
    )
    return efm


def sample_extremizer(
    efm: ExtremizerFeatureMap,
    top_k: int = ExtremalConstants.DEFAULT_TOP_K,
) -> ExtremalResult:
    """Distribuição exata de |𝒳⟩ na base Z, rotulada por bitstring.

    Com codificação digital o decodificador é a identidade: o qubit 0 é o
    bit mais significativo do rótulo.
    """
    probs = efm.probabilities()
    distribution = {
        int_to_bits(index, efm.n_qubits): float(p)
        for index, p in enumerate(probs)
    }
    return ExtremalResult(
        trajectory=list(efm.trajectory),
        best_value=efm.final_value,
        distribution=distribution,
        top_candidates=rank_candidates(distribution, top_k),
        params=[float(v) for v in efm.chi],
    )
