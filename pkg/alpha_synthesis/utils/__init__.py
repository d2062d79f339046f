__all__ = [
    "AlphaSynthesisError",
    "InvalidArgumentError",
    "UnsupportedGridError",
    "GridMismatchError",
    "BudgetExceededError",
    "NCFKFormatError",
    "NonZeroTraceError",
    "ResolutionExceededError",
    "validate_grid_size",
    "validate_spacing",
    "validate_sign",
    "validate_exponent",
    "conjugate_exponent",
    "validate_delta",
    "validate_epsilon",
    "validate_trace_zero",
    "log_action",
    "require_self_dual",
    "require_same_grid",
]

from .validators import (
    AlphaSynthesisError,
    InvalidArgumentError,
    UnsupportedGridError,
    GridMismatchError,
    BudgetExceededError,
    NCFKFormatError,
    NonZeroTraceError,
    ResolutionExceededError,
    validate_grid_size,
    validate_spacing,
    validate_sign,
    validate_exponent,
    conjugate_exponent,
    validate_delta,
    validate_epsilon,
    validate_trace_zero,
)

from .decorators import (
    log_action,
    require_self_dual,
    require_same_grid,
)
