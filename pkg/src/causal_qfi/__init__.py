"""Quantum Fisher information for three depolarizing channels in superposed
causal orders: brute-force switch simulator, structured block model, closed-form
and numerical QFI engines, and a cross-validation harness."""

from .channels import (
    apply_channel,
    basis_projector,
    depolarizing_kraus,
    is_density_matrix,
    kraus_completeness_defect,
    validate_density_matrix,
    weyl_operators,
)
from .switch import (
    CAUSAL_ORDERS,
    OrderCombination,
    control_state,
    drho_fd,
    enumerate_orders,
    relabel_orders,
    switch2_output,
    switch_kraus,
    switch_output,
)
from .blocks import (
    BLOCK_LABELS,
    BlockClassificationError,
    all_combinations,
    block_coeffs,
    block_coeffs_deriv,
    block_eigenvalues,
    classification_census,
    classify_combination,
    drho_analytic,
    order_pair_labels,
    pair_block_label,
    structured_output,
)
from .qfi import (
    QfiResult,
    analytic_representatives,
    qfi2_numeric,
    qfi_analytic_for,
    qfi_definite,
    qfi_from_state,
    qfi_ind_m2,
    qfi_m2,
    qfi_m3,
    qfi_m4,
    qfi_m6,
    qfi_numeric,
    relative_gain,
    sld_numeric,
)
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "BLOCK_LABELS",
    "BlockClassificationError",
    "CAUSAL_ORDERS",
    "OrderCombination",
    "QfiResult",
    "all_combinations",
    "analytic_representatives",
    "apply_channel",
    "basis_projector",
    "block_coeffs",
    "block_coeffs_deriv",
    "block_eigenvalues",
    "classification_census",
    "classify_combination",
    "control_state",
    "depolarizing_kraus",
    "drho_analytic",
    "drho_fd",
    "enumerate_orders",
    "is_density_matrix",
    "kraus_completeness_defect",
    "order_pair_labels",
    "pair_block_label",
    "qfi2_numeric",
    "qfi_analytic_for",
    "qfi_definite",
    "qfi_from_state",
    "qfi_ind_m2",
    "qfi_m2",
    "qfi_m3",
    "qfi_m4",
    "qfi_m6",
    "qfi_numeric",
    "relabel_orders",
    "relative_gain",
    "run_verification",
    "sld_numeric",
    "structured_output",
    "switch2_output",
    "switch_kraus",
    "switch_output",
    "validate_density_matrix",
    "weyl_operators",
    "__version__",
]
