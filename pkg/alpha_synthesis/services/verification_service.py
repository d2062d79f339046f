"""
Suites de vérification pilotées par la commande `verify`.

Chaque suite prend (n, seed) et renvoie un `Report` ; le résultat ne dépend
que de ces deux paramètres.
"""
from __future__ import annotations

import math
from typing import Callable, Dict

import numpy as np

from alpha_synthesis.models import KernelOperator, LineGrid, PlaneFunction, PlaneGrid, Report
from alpha_synthesis.services.action_service import (
	act_spectral,
	verify_alpha_derivatives,
	verify_multiplier,
	verify_oscillator_intertwine,
	verify_product_rule_P,
	verify_product_rule_Q,
)
from alpha_synthesis.services.alpha_service import (
	alpha,
	make_report,
	theta,
	verify_hausdorff_young,
	verify_hoelder,
	verify_inversion,
	verify_plancherel,
	verify_riemann_lebesgue,
	verify_sup_bound,
)
from alpha_synthesis.services.builtin_service import BuiltinService, hermite_mixture, random_coefficients
from alpha_synthesis.services.grid_service import fourier_1d, fourier_2d, hermite_basis, make_line_grid
from alpha_synthesis.services.operator_service import (
	apply_H,
	apply_H_inv,
	oscillator_apply,
	oscillator_inverse_norm,
)
from alpha_synthesis.services.synthesis_service import (
	VERSAL_TOLERANCE,
	SCALING_TOLERANCE,
	make_mollifier,
	max_hermite_modes,
	resolvable_deltas,
	scaling_asserted,
	scaling_identity_error,
	tau_delta,
	verify_sobolev_route,
	versal_asserted,
	versal_constant_hankel,
)
from alpha_synthesis.utils.config import INEQUALITY_SLACK
from alpha_synthesis.utils.decorators import log_action

RANDOM_TRIALS = 50
HAUSDORFF_YOUNG_EXPONENTS = (1.0, 1.25, 1.5, 1.75, 2.0)
HOELDER_EXPONENTS = (1.0, 4.0 / 3.0, 2.0, 4.0, math.inf)
PRODUCT_RULE_MAX_N = 32
INTERTWINE_MAX_N = 64
DIRECT_MULTIPLIER_MAX_N = 32


# Données de test

def gaussian_weight(grid: PlaneGrid, width: float = 2.0) -> PlaneFunction:
	"""q(x, y) = exp(-width pi (x^2 + y^2))."""
	x, y = grid.mesh()
	return PlaneFunction(grid, np.exp(-width * math.pi * (x**2 + y**2)))


def gaussian_plane(grid: PlaneGrid) -> PlaneFunction:
	"""2^1/2 exp(-pi (x^2 + y^2)), point fixe de la transformée 2D."""
	x, y = grid.mesh()
	return PlaneFunction(grid, math.sqrt(2.0) * np.exp(-math.pi * (x**2 + y**2)))


def random_plane(grid: PlaneGrid, rng: np.random.Generator) -> PlaneFunction:
	shape = grid.shape
	return PlaneFunction(grid, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_kernel(grid: LineGrid, rng: np.random.Generator) -> KernelOperator:
	shape = (grid.n, grid.n)
	return KernelOperator(grid, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def smooth_random_plane(grid: LineGrid, seed: int, modes: int = 8) -> PlaneFunction:
	"""alpha d'un mélange aléatoire de modes d'Hermite : lisse et décroissante."""
	return alpha(hermite_mixture(grid, random_coefficients(modes, seed, trace_zero=False)))


def _grid_and_rng(n: int, seed: int) -> tuple[LineGrid, np.random.Generator]:
	return make_line_grid(n), np.random.default_rng(seed)


# Suites

def suite_plancherel(n: int, seed: int) -> Report:
	grid, rng = _grid_and_rng(n, seed)
	report = make_report("plancherel", grid, {"seed": seed, "construction": "hermite-mixture"})
	report.merge(verify_plancherel(smooth_random_plane(grid, seed)), "theta_")
	x = hermite_mixture(grid, random_coefficients(8, seed + 1, trace_zero=False))
	lhs = alpha(x).lp_norm(2.0)
	rhs = x.norm(2.0)
	report.add_quantity("alpha_l2_norm", lhs)
	report.add_quantity("s2_norm", rhs)
	report.check_close("alpha_isometry_ratio", lhs / rhs, 1.0, 1e-8)
	f = random_plane(PlaneGrid(grid), rng)
	report.merge(verify_plancherel(f), "rough_")
	return report


def suite_riemann_lebesgue(n: int, seed: int) -> Report:
	grid, rng = _grid_and_rng(n, seed)
	report = make_report("riemann-lebesgue", grid, {"seed": seed, "trials": RANDOM_TRIALS})
	x = BuiltinService().construire("random-tracezero", grid, seed)
	report.merge(verify_riemann_lebesgue(x), "smooth_")
	violations = 0
	for _ in range(RANDOM_TRIALS):
		if not verify_sup_bound(random_kernel(grid, rng)).passed:
			violations += 1
	report.add_quantity("sup_bound_violations", violations)
	report.check_true("sup_bound_random", violations == 0, float(violations))
	return report


def suite_hausdorff_young(n: int, seed: int) -> Report:
	grid, rng = _grid_and_rng(n, seed)
	plane = PlaneGrid(grid)
	report = make_report("hausdorff-young", grid, {"seed": seed, "trials": RANDOM_TRIALS})
	worst = {p: 0.0 for p in HAUSDORFF_YOUNG_EXPONENTS}
	violations = {p: 0 for p in HAUSDORFF_YOUNG_EXPONENTS}
	for _ in range(RANDOM_TRIALS):
		f = random_plane(plane, rng)
		for p in HAUSDORFF_YOUNG_EXPONENTS:
			trial = verify_hausdorff_young(f, p)
			worst[p] = max(worst[p], trial.quantity("ratio"))
			violations[p] += 0 if trial.passed else 1
	for p in HAUSDORFF_YOUNG_EXPONENTS:
		report.add_quantity(f"max_ratio_p{p:g}", worst[p])
		report.check_le(f"hausdorff_young_p{p:g}", worst[p], 1.0, INEQUALITY_SLACK)
		report.add_quantity(f"violations_p{p:g}", violations[p])
	report.check_close("plancherel_equality_p2", worst[2.0], 1.0, 1e-8)
	return report


def suite_hoelder(n: int, seed: int) -> Report:
	grid, rng = _grid_and_rng(n, seed)
	report = make_report("hoelder", grid, {"seed": seed, "trials": RANDOM_TRIALS})
	failures = 0
	trace_failures = 0
	monotone_failures = 0
	for _ in range(RANDOM_TRIALS):
		a = random_kernel(grid, rng)
		b = random_kernel(grid, rng)
		if not verify_hoelder(a, b, HOELDER_EXPONENTS).passed:
			failures += 1
		if abs(a.trace()) > a.norm(1.0) * (1 + INEQUALITY_SLACK):
			trace_failures += 1
		norms = [a.norm(p) for p in HOELDER_EXPONENTS]
		if any(later > earlier * (1 + INEQUALITY_SLACK) for earlier, later in zip(norms, norms[1:])):
			monotone_failures += 1
	report.add_quantity("hoelder_violations", failures)
	report.add_quantity("trace_violations", trace_failures)
	report.add_quantity("monotonicity_violations", monotone_failures)
	report.check_true("hoelder_all_exponents", failures == 0, float(failures))
	report.check_true("trace_le_trace_norm", trace_failures == 0, float(trace_failures))
	report.check_true("schatten_monotonicity", monotone_failures == 0, float(monotone_failures))
	return report


def suite_inversion(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	plane = PlaneGrid(grid)
	report = make_report("inversion", grid, {"seed": seed})
	report.merge(verify_inversion(gaussian_plane(plane)), "gaussian_")
	report.merge(verify_inversion(smooth_random_plane(grid, seed), 1e-6), "hermite_mixture_")
	projector = BuiltinService().construire("gauss-proj", grid)
	error = (theta(alpha(projector)) - projector).norm(1.0)
	report.add_quantity("theta_alpha_s1_error", error)
	report.check_le("theta_alpha_identity", error, 1e-6)
	return report


def suite_multiplier(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	report = make_report("multiplier", grid, {"seed": seed})
	service = BuiltinService()
	x = service.construire("gauss-proj", grid)
	report.merge(verify_multiplier(gaussian_weight(PlaneGrid(grid)), x, "spectral", 1e-6), "spectral_")
	small = make_line_grid(min(n, DIRECT_MULTIPLIER_MAX_N))
	x_small = service.construire("gauss-proj", small)
	report.merge(verify_multiplier(gaussian_weight(PlaneGrid(small)), x_small, "direct", 1e-3), "direct_")
	return report


def suite_derivatives(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	report = make_report("derivatives", grid, {"seed": seed})
	service = BuiltinService()
	report.merge(verify_alpha_derivatives(service.construire("gauss-proj", grid)), "gauss_")
	report.merge(verify_alpha_derivatives(service.construire("hermite-proj1", grid), 1e-5), "hermite1_")
	weighted = act_spectral(gaussian_weight(PlaneGrid(grid)), service.construire("gauss-proj", grid))
	report.merge(verify_alpha_derivatives(weighted, 1e-5), "weighted_")
	small = make_line_grid(min(n, INTERTWINE_MAX_N))
	q = gaussian_weight(PlaneGrid(small))
	report.merge(verify_oscillator_intertwine(q, service.construire("gauss-proj", small)), "intertwine_")
	return report


def suite_product_rules(n: int, seed: int) -> Report:
	grid = make_line_grid(min(n, PRODUCT_RULE_MAX_N))
	report = make_report("product-rules", grid, {"seed": seed})
	x = BuiltinService().construire("gauss-proj", grid)
	q = gaussian_weight(PlaneGrid(grid))
	report.merge(verify_product_rule_P(q, x), "P_")
	report.merge(verify_product_rule_Q(q, x), "Q_")
	return report


def _eigen_residuals(grid: LineGrid, k_max: int) -> list[float]:
	basis = hermite_basis(grid, k_max + 1)
	residuals = []
	for k in range(k_max + 1):
		eigenvalue = -2 * math.pi * (2 * k + 1)
		residual = oscillator_apply(basis[k]) - basis[k] * eigenvalue
		residuals.append(residual.norm() / abs(eigenvalue))
	return residuals


def suite_oscillator(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	report = make_report("oscillator", grid, {"seed": seed})
	k_max = min(10, max_hermite_modes(grid) - 1)
	for k, residual in enumerate(_eigen_residuals(grid, k_max)):
		report.check_le(f"eigen_residual_k{k}", residual, 1e-6)
	series = oscillator_inverse_norm(2.0)
	report.add_quantity("inverse_s2_norm", series)
	report.check_close("inverse_s2_series", series, 1 / math.sqrt(32), 1e-3)
	modes = min(10, k_max + 1)
	x = hermite_mixture(grid, random_coefficients(modes, seed, trace_zero=False))
	error = (apply_H_inv(apply_H(x), modes) - x).norm(1.0) / x.norm(1.0)
	report.add_quantity("inverse_round_trip_error", error)
	report.check_le("inverse_round_trip", error, 1e-6)
	fam = make_mollifier(PlaneGrid(grid))
	x0 = BuiltinService().construire("hermite01", grid)
	for delta in resolvable_deltas(fam.grid, 3):
		report.merge(verify_sobolev_route(x0, fam, delta, 1.5), f"sobolev_delta_{delta:g}_")
	return report


def suite_hermite(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	report = make_report("hermite", grid, {"seed": seed})
	k_max = min(20, max_hermite_modes(grid) - 1)
	basis = hermite_basis(grid, k_max + 1)
	gram_error = float(np.abs(basis.gram() - np.eye(basis.m)).max())
	report.add_quantity("k_max", k_max)
	report.check_le("orthonormality", gram_error, 1e-8)
	fourier_error = max(
		(fourier_1d(basis[k], -1) - basis[k] * (-1j) ** k).norm() for k in range(basis.m)
	)
	report.check_le("fourier_eigenvectors", float(fourier_error), 1e-8)
	odd = basis[1].values
	report.check_le("parity_phi1", float(np.abs(odd[1:] + odd[:0:-1]).max()), 0.0)
	for k, residual in enumerate(_eigen_residuals(grid, min(10, k_max))):
		report.check_le(f"eigen_residual_k{k}", residual, 1e-6)
	return report


def suite_versal(n: int, seed: int) -> Report:
	grid = make_line_grid(n)
	plane = PlaneGrid(grid)
	report = make_report("versal", grid, {"seed": seed})
	fam = make_mollifier(plane)
	reference = versal_constant_hankel()
	report.add_quantity("V_grid", fam.versal_constant)
	report.add_quantity("V_hankel", reference)
	report.check_le("versal_at_least_one", 1.0, fam.versal_constant, INEQUALITY_SLACK)
	inversion = (fourier_2d(fam.tau_check, -1) - fam.tau).sup_norm()
	report.check_le("hat_check_tau", inversion, 1e-8)
	for delta in resolvable_deltas(plane, 8):
		_, tau_check = tau_delta(fam, delta, check_scaling=False)
		ratio = tau_check.lp_norm(1.0) / reference
		report.add_quantity(f"versal_ratio_delta_{delta:g}", ratio)
		if versal_asserted(plane, delta):
			report.check_close(f"versal_delta_{delta:g}", ratio, 1.0, VERSAL_TOLERANCE)
		error = scaling_identity_error(fam, delta)
		report.add_quantity(f"scaling_error_delta_{delta:g}", error)
		if scaling_asserted(plane, delta):
			report.check_le(f"scaling_delta_{delta:g}", error, SCALING_TOLERANCE)
	return report


SUITES: Dict[str, Callable[[int, int], Report]] = {
	"plancherel": suite_plancherel,
	"riemann-lebesgue": suite_riemann_lebesgue,
	"hausdorff-young": suite_hausdorff_young,
	"hoelder": suite_hoelder,
	"inversion": suite_inversion,
	"multiplier": suite_multiplier,
	"derivatives": suite_derivatives,
	"product-rules": suite_product_rules,
	"oscillator": suite_oscillator,
	"hermite": suite_hermite,
	"versal": suite_versal,
}


@log_action("exécution d'une suite de vérification")
def run_suite(name: str, n: int, seed: int) -> Report:
	return SUITES[name](n, seed)
