import factory

from apps.circuit import (
    Observable,
    QuantumModel,
    build_chebyshev_tower,
    build_hea,
    init_theta,
)
from tools.utils import make_rng


class QuantumModelFactory(factory.Factory):
    """Modelo Chebyshev + HEA com θ aleatório semeado."""

    class Meta:
        model = QuantumModel

    class Params:
        n_qubits = 2
        depth = 2
        seed = 0
        theta_scale = 1.0
        alpha = 1.0
        beta = 0.5

    feature_map = factory.LazyAttribute(
        lambda o: build_chebyshev_tower(o.n_qubits)
    )
    ansatz = factory.LazyAttribute(lambda o: build_hea(o.n_qubits, o.depth))
    observable = factory.LazyAttribute(
        lambda o: Observable(o.n_qubits, alpha=o.alpha, beta=o.beta)
    )
    theta = factory.LazyAttribute(
        lambda o: o.theta_scale
        * init_theta(2 * o.n_qubits * o.depth, make_rng(o.seed))
    )
