from apps.problems.constants import Direction
from apps.problems.functions import (
    MixedFunctionSpec,
    dqc_ode_spec,
    mixed_f,
    ode_analytic,
    ode_rhs,
    target_sin5x,
)
from apps.problems.generators import (
    gen_correlation_chain,
    gen_maxcut_clusters,
    gen_molecule,
)
from apps.problems.instances import (
    CorrelationChainInstance,
    MaxCutInstance,
    MoleculeInstance,
    chain_cost,
    maxcut_cost,
    maxcut_from_points,
    molecule_energy,
)
from apps.problems.oracles import brute_force_optimum
from apps.problems.training_sets import make_training_set
