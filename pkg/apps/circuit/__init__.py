from apps.circuit.ansatz import build_hea, identity_ansatz, init_theta
from apps.circuit.feature_maps import (
    build_chebyshev_tower,
    build_digital_encoding,
    build_digital_feature_map,
    build_mixed_feature_map,
    domain_rescaling,
)
from apps.circuit.ir import (
    BindingKind,
    CircuitIR,
    Operation,
    ParamBinding,
    Transform,
)
from apps.circuit.model import (
    Observable,
    QuantumModel,
    evaluate_batch,
    evaluate_model,
)
