from apps.diff.engine import op_derivatives, shift_rule, shifted_expectations
from apps.diff.gradients import (
    GradientReport,
    dfdx_batch,
    dfdx_theta_jacobian_batch,
    grad_theta,
    grad_theta_of_dfdx,
    grad_x,
    theta_jacobian_batch,
)
