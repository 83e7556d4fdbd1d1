from apps.train.datasets import Dataset, OdeSpec, TargetScaler, scale_targets
from apps.train.losses import (
    mse_loss,
    mse_loss_and_grad,
    ode_residual_loss,
    ode_residual_loss_and_grad,
)
from apps.train.optimizers import (
    AdamState,
    OptimizerConfig,
    OptimizerKind,
    adam_step,
    minimize_adam,
    minimize_lbfgs,
)
from apps.train.training import TrainReport, fit, lbfgs_run
