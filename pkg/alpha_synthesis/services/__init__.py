from .grid_service import (
	make_line_grid,
	self_dual_plane_grid,
	fourier_1d,
	fourier_2d,
	spectral_derivative,
	hermite_fn,
	hermite_basis,
	bump_tau,
)
from .operator_service import (
	rank_one,
	schatten_norm,
	translate_op,
	modulate_op,
	heisenberg_action,
	apply_P,
	apply_Q,
	apply_H,
	apply_H_inv,
	op_compose,
)
from .alpha_service import (
	alpha,
	alpha_direct,
	theta,
	verify_inversion,
	verify_hausdorff_young,
)
from .action_service import (
	act_direct,
	act_spectral,
	verify_product_rule_P,
	verify_product_rule_Q,
	verify_alpha_derivatives,
	verify_oscillator_intertwine,
)
from .differential_service import d_operator
from .synthesis_service import (
	make_mollifier,
	tau_delta,
	constants_ledger,
	verify_pointwise_bound,
	decay_ladder,
	approximate_schwartz,
	find_rho,
)
from .builtin_service import BuiltinService, BuiltinNotFoundError

__all__ = [
	"make_line_grid",
	"self_dual_plane_grid",
	"fourier_1d",
	"fourier_2d",
	"spectral_derivative",
	"hermite_fn",
	"hermite_basis",
	"bump_tau",
	"rank_one",
	"schatten_norm",
	"translate_op",
	"modulate_op",
	"heisenberg_action",
	"apply_P",
	"apply_Q",
	"apply_H",
	"apply_H_inv",
	"op_compose",
	"alpha",
	"alpha_direct",
	"theta",
	"verify_inversion",
	"verify_hausdorff_young",
	"act_direct",
	"act_spectral",
	"verify_product_rule_P",
	"verify_product_rule_Q",
	"verify_alpha_derivatives",
	"verify_oscillator_intertwine",
	"d_operator",
	"make_mollifier",
	"tau_delta",
	"constants_ledger",
	"verify_pointwise_bound",
	"decay_ladder",
	"approximate_schwartz",
	"find_rho",
	"BuiltinService",
	"BuiltinNotFoundError",
]
