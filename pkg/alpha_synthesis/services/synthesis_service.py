"""
Synthèse spectrale : famille de mollifieurs, constante versale, bornes de
décroissance et construction de rho.

Ce module fournit :
- `make_mollifier`, `tau_delta`, `versal_constant_hankel`
- `d_mollified` : D(tau_delta alpha(X)) par la formule de Leibniz
- `constants_ledger`, `verify_pointwise_bound`, `decay_ladder`, `decay_report`
- `verify_sobolev_route`
- `approximate_schwartz` et `find_rho`

Politique de résolution : un niveau delta est résolu quand la boule fermée
de rayon delta/2 contient au moins PLATEAU_POINTS points par axe.
"""
from __future__ import annotations

import logging
import math
from typing import List, Sequence

import numpy as np
from scipy import integrate, linalg, special

from alpha_synthesis.models import (
	ConstantsLedger,
	DecayRow,
	DecayTable,
	KernelOperator,
	MollifierFamily,
	PlaneFunction,
	PlaneGrid,
	Report,
)
from alpha_synthesis.services.action_service import act_spectral
from alpha_synthesis.services.alpha_service import alpha, make_report
from alpha_synthesis.services.differential_service import d_operator, gradient_magnitude, laplacian, partial_x, partial_y
from alpha_synthesis.services.grid_service import (
	bump_laplacian,
	bump_profile,
	bump_tau,
	fourier_2d,
	hermite_basis,
	hermite_fn,
	tau_hash,
)
from alpha_synthesis.services.operator_service import apply_H, grid_oscillator_inverse_norm, oscillator_inverse_norm, rank_one
from alpha_synthesis.utils.config import (
	HERMITE_SAFETY_FACTOR,
	INEQUALITY_SLACK,
	LOGGER_NAME,
	PLATEAU_POINTS,
	SCALING_MIN_RATIO,
	TRACE_ZERO_RTOL,
	VERSAL_MIN_REACH,
)
from alpha_synthesis.utils.decorators import log_action
from alpha_synthesis.utils.validators import (
	GridMismatchError,
	ResolutionExceededError,
	UnsupportedGridError,
	conjugate_exponent,
	validate_delta,
	validate_epsilon,
	validate_exponent,
	validate_trace_zero,
)

logger = logging.getLogger(LOGGER_NAME)

SCALING_TOLERANCE = 1e-6
VERSAL_TOLERANCE = 0.01
SLOPE_BAND = 0.15
PLATEAU_TOLERANCE = 1e-6
SUPPORT_RESIDUAL = 1e-8


# Famille de mollifieurs

@log_action("construction de la famille de mollifieurs")
def make_mollifier(grid: PlaneGrid) -> MollifierFamily:
	if not grid.self_dual:
		raise UnsupportedGridError(f"make_mollifier exige une grille auto-duale, reçu {grid!r}")
	tau = bump_tau(grid)
	tau_check = fourier_2d(tau, 1)
	return MollifierFamily(grid, tau, tau_check, tau_check.lp_norm(1.0), tau_hash())


def plateau_points(grid: PlaneGrid, delta: float) -> int:
	"""Nombre minimal (sur les deux axes) de points dans [-delta/2, delta/2]."""
	counts = []
	for axis in (grid.xgrid, grid.ygrid):
		half = math.floor(delta / (2 * axis.h) + 1e-9)
		counts.append(2 * half + 1)
	return min(counts)


def is_resolvable(grid: PlaneGrid, delta: float) -> bool:
	return plateau_points(grid, delta) >= PLATEAU_POINTS


def resolvable_deltas(grid: PlaneGrid, levels: int) -> List[float]:
	"""Échelle dyadique 2^-i, i < levels, limitée aux niveaux résolus."""
	deltas = []
	for i in range(levels):
		delta = 2.0**-i
		if not is_resolvable(grid, delta):
			break
		deltas.append(delta)
	return deltas


def _scaled_tau(grid: PlaneGrid, delta: float) -> PlaneFunction:
	psi, _, _ = bump_profile(grid.radius() / delta)
	return PlaneFunction(grid, psi)


def _resampled_check(fam: MollifierFamily, delta: float) -> PlaneFunction:
	"""delta^2 tau_check(delta .) par rééchantillonnage à bande limitée."""
	grid = fam.grid
	matrices = []
	for axis in (grid.xgrid, grid.ygrid):
		points = axis.points
		matrices.append(axis.h * np.exp(2j * math.pi * delta * np.outer(points, points)))
	values = delta**2 * (matrices[0] @ fam.tau.values @ matrices[1].T)
	return PlaneFunction(grid, values)


def scaling_identity_error(fam: MollifierFamily, delta: float) -> float:
	"""Écart sup entre tau_check_delta (FFT) et delta^2 tau_check(delta .)."""
	fft_route = fourier_2d(_scaled_tau(fam.grid, delta), 1)
	return (fft_route - _resampled_check(fam, delta)).sup_norm()


def scaling_asserted(grid: PlaneGrid, delta: float) -> bool:
	return delta / grid.xgrid.h >= SCALING_MIN_RATIO


def versal_asserted(grid: PlaneGrid, delta: float) -> bool:
	return delta * grid.xgrid.extent / 2 >= VERSAL_MIN_REACH


def tau_delta(fam: MollifierFamily, delta: float, check_scaling: bool = True) -> tuple[PlaneFunction, PlaneFunction]:
	"""
	Renvoie (tau_delta, tau_check_delta), ce dernier par la voie FFT.

	Avec `check_scaling`, la règle d'échelle est aussi évaluée et un écart
	hors tolérance est journalisé quand la grille le permet.
	"""
	validate_delta(delta)
	if not is_resolvable(fam.grid, delta):
		raise ResolutionExceededError(
			f"delta = {delta} non résolu : {plateau_points(fam.grid, delta)} points sur B_delta/2"
		)
	if delta == 1.0:
		return fam.tau, fam.tau_check
	tau = _scaled_tau(fam.grid, delta)
	tau_check = fourier_2d(tau, 1)
	if check_scaling and scaling_asserted(fam.grid, delta):
		error = scaling_identity_error(fam, delta)
		if error > SCALING_TOLERANCE:
			logger.warning("règle d'échelle : écart %.3e pour delta = %g", error, delta)
	return tau, tau_check


def versal_constant_hankel(
	radial_points: int = 2001, rho_max: float = 60.0, rho_points: int = 6001, chunk: int = 500
) -> float:
	"""
	V = ||tau_check||_1 sans grille : tau_check(rho) = 2 pi int psi(r) J0(2 pi rho r) r dr.
	"""
	r = np.linspace(0.0, 1.0, radial_points)
	psi, _, _ = bump_profile(r)
	rho = np.linspace(0.0, rho_max, rho_points)
	profile = np.empty_like(rho)
	for start in range(0, rho_points, chunk):
		block = rho[start : start + chunk]
		integrand = psi * special.j0(2 * math.pi * np.outer(block, r)) * r
		profile[start : start + chunk] = 2 * math.pi * integrate.trapezoid(integrand, r, axis=1)
	return float(integrate.trapezoid(2 * math.pi * rho * np.abs(profile), rho))


# Opérateur D et constantes

def _check_family(x: KernelOperator, fam: MollifierFamily) -> None:
	if fam.grid != PlaneGrid(x.grid):
		raise GridMismatchError(f"famille {fam.grid!r} incompatible avec {x.grid!r}")


def _require_trace_zero(x: KernelOperator) -> None:
	validate_trace_zero(x.trace(), x.norm(1.0), TRACE_ZERO_RTOL)


def d_mollified(u: PlaneFunction, delta: float) -> PlaneFunction:
	"""
	D(tau_delta u) = tau Du + u Delta tau + 2 grad tau . grad u - 4 pi i y u d_x tau,
	avec les dérivées exactes de tau_delta : nul hors de B_delta.
	"""
	grid = u.grid
	x, y = grid.mesh()
	r = np.hypot(x, y)
	psi, d1, _ = bump_profile(r / delta)
	lap = bump_laplacian(r / delta) / delta**2
	with np.errstate(divide="ignore", invalid="ignore"):
		radial = np.where(r > 0, d1 / (delta * np.where(r > 0, r, 1.0)), 0.0)
	tau_x = radial * x
	tau_y = radial * y
	ux = partial_x(u).values
	uy = partial_y(u).values
	values = (
		psi * d_operator(u).values
		+ u.values * lap
		+ 2 * (tau_x * ux + tau_y * uy)
		- 4j * math.pi * y * u.values * tau_x
	)
	return PlaneFunction(grid, values)


@log_action("calcul du registre de constantes")
def constants_ledger(x: KernelOperator, fam: MollifierFamily) -> ConstantsLedger:
	_check_family(x, fam)
	_require_trace_zero(x)
	u = alpha(x)
	r = fam.grid.radius()
	ball = r <= 1.0
	_, d1, _ = bump_profile(r)
	return ConstantsLedger(
		C1=float(gradient_magnitude(u)[ball].max()),
		C2=float(np.abs(laplacian(u).values[ball]).max()),
		D1=float(np.abs(fam.tau.values[ball]).max()),
		D2=float(np.abs(d1[ball]).max()),
		D3=float(np.abs(bump_laplacian(r)[ball]).max()),
	)


@log_action("vérification de la borne ponctuelle sur B_delta")
def verify_pointwise_bound(x: KernelOperator, fam: MollifierFamily, delta: float) -> Report:
	ledger = constants_ledger(x, fam)
	if not is_resolvable(fam.grid, delta):
		raise ResolutionExceededError(f"delta = {delta} non résolu par la grille")
	report = make_report("pointwise-bound", x.grid, {"delta": delta})
	field = np.abs(d_mollified(alpha(x), delta).values)
	r = fam.grid.radius()
	inside = r <= delta
	bound = ledger.pointwise_bound(r, delta)
	excess = field[inside] - bound[inside]
	slack = INEQUALITY_SLACK * max(float(bound[inside].max()), 1.0)
	violations = int(np.count_nonzero(excess > slack))
	peak = float(field.max(initial=0.0))
	outside = float(field[~inside].max(initial=0.0))
	for name, value in ledger.to_dict().items():
		report.add_quantity(name, value)
	report.add_quantity("peak", peak)
	report.add_quantity("max_excess", float(excess.max(initial=-math.inf)))
	report.add_quantity("violations", violations)
	report.add_quantity("outside_residual", outside)
	report.check_true("pointwise_bound_on_B_delta", violations == 0, float(violations))
	report.check_le("supported_in_B_delta", outside, SUPPORT_RESIDUAL * peak)
	return report


def fit_slope(deltas: Sequence[float], values: Sequence[float]) -> float:
	"""Pente moindres carrés de log(values) contre log(deltas)."""
	values = np.asarray(values, dtype=float)
	if len(deltas) < 2 or np.any(values <= 0):
		return math.nan
	slope, _ = np.polyfit(np.log(deltas), np.log(values), 1)
	return float(slope)


@log_action("échelle de décroissance")
def decay_ladder(x: KernelOperator, fam: MollifierFamily, p: float, levels: int) -> tuple[DecayTable, ConstantsLedger]:
	"""
	Pour delta = 2^-i : ||D(tau_delta alpha(X))||_p, la borne et ||tau_check_delta·X||_S1.

	Les niveaux non résolus tronquent l'échelle (avertissement journalisé).
	"""
	p = validate_exponent(p)
	ledger = constants_ledger(x, fam)
	u = alpha(x)
	deltas = resolvable_deltas(fam.grid, levels)
	if not deltas:
		raise ResolutionExceededError("aucun niveau de l'échelle n'est résolu par la grille")
	if len(deltas) < levels:
		logger.warning(
			"échelle tronquée à %d niveaux sur %d demandés (grille n = %d)", len(deltas), levels, x.grid.n
		)
	rows = []
	for delta in deltas:
		_, tau_check = tau_delta(fam, delta, check_scaling=False)
		rows.append(
			DecayRow(
				delta,
				d_mollified(u, delta).lp_norm(p),
				ledger.lp_bound(p, delta),
				act_spectral(tau_check, x).norm(1.0),
			)
		)
	return DecayTable(p, rows, truncated=len(deltas) < levels, requested=levels), ledger


def decay_report(table: DecayTable, ledger: ConstantsLedger, x: KernelOperator) -> Report:
	"""Contrôles de l'échelle : borne L^p à chaque niveau, décroissance de S1 sur les 3 derniers."""
	report = make_report("synthesis-decay", x.grid, {"p": table.p, "levels": table.requested})
	for name, value in ledger.to_dict().items():
		report.add_quantity(name, value)
	report.add_quantity("truncated", table.truncated)
	for row in table:
		report.check_le(f"lp_bound_delta_{row.delta:g}", row.lp_norm, row.bound, INEQUALITY_SLACK * max(row.bound, 1.0))
	tail = table.rows[-3:]
	if len(tail) >= 2:
		decreasing = all(b.s1_norm < a.s1_norm for a, b in zip(tail, tail[1:]))
		report.check_true("s1_strictly_decreasing", decreasing or all(r.s1_norm == 0 for r in tail))
		deltas = [r.delta for r in tail]
		lp_slope = fit_slope(deltas, [r.lp_norm for r in tail])
		report.add_quantity("lp_slope", lp_slope)
		report.add_quantity("resolved_bound_slope", fit_slope(deltas, [r.bound for r in tail]))
		if not math.isnan(lp_slope):
			report.check_true("lp_slope_positive", lp_slope > 0, lp_slope)
	# la borne est explicite en delta : sa pente se mesure sur l'échelle demandée, résolue ou non
	ladder = [2.0**-i for i in range(table.requested)][-3:]
	report.add_quantity("expected_slope", table.expected_slope())
	if len(ladder) == 3:
		bound_slope = fit_slope(ladder, [ledger.lp_bound(table.p, delta) for delta in ladder])
		report.add_quantity("bound_slope", bound_slope)
		report.check_true(
			"bound_slope_in_band", abs(bound_slope - table.expected_slope()) <= SLOPE_BAND, bound_slope
		)
	return report


@log_action("vérification de la voie de Sobolev")
def verify_sobolev_route(x: KernelOperator, fam: MollifierFamily, delta: float, p: float) -> Report:
	"""||tau_check_delta·X||_S1 <= ||H^-1||_{S^p} ||H(tau_check_delta·X)||_{S^p'}."""
	p = validate_exponent(p)
	_, tau_check = tau_delta(fam, delta, check_scaling=False)
	acted = act_spectral(tau_check, x)
	report = make_report("sobolev-route", x.grid, {"delta": delta, "p": p})
	inverse_norm = grid_oscillator_inverse_norm(x.grid, p)
	lhs = acted.norm(1.0)
	rhs = inverse_norm * apply_H(acted).norm(conjugate_exponent(p))
	report.add_quantity("grid_inverse_norm", inverse_norm)
	report.add_quantity("series_inverse_norm", oscillator_inverse_norm(p))
	report.add_quantity("s1_norm", lhs)
	report.add_quantity("sobolev_bound", rhs)
	report.check_le("sobolev_route", lhs, rhs, 1e-6 * max(rhs, 1.0))
	return report


# Approximation et construction de rho

def max_hermite_modes(grid) -> int:
	"""Plus grand m dont tous les modes sont résolus par la grille."""
	reach = grid.extent / 2
	k_max = math.floor((2 * math.pi * (reach / HERMITE_SAFETY_FACTOR) ** 2 - 1) / 2 - 1e-9)
	return max(k_max + 1, 0)


def _projection_residuals(basis_matrix: np.ndarray, h: float, vectors: np.ndarray) -> np.ndarray:
	"""residuals[m, k] = ||v_k - P_m v_k||_h pour m = 0..M."""
	residual = vectors.copy()
	norms = [np.sqrt(h) * np.linalg.norm(residual, axis=0)]
	for j in range(basis_matrix.shape[1]):
		phi = basis_matrix[:, j]
		residual = residual - np.outer(phi, h * (phi.conj() @ residual))
		norms.append(np.sqrt(h) * np.linalg.norm(residual, axis=0))
	return np.array(norms)


@log_action("approximation par un opérateur de Schwartz")
def approximate_schwartz(x: KernelOperator, eps: float) -> KernelOperator:
	"""
	Z de trace nulle, combinaison finie de fonctions d'Hermite, avec ||X - Z||_S1 < eps.

	1. troncature SVD (queue < eps/4)
	2. compression sur les m premiers modes d'Hermite, m minimal
	3. correction de trace par W = phi_0 ⊗ conj(phi_0)
	"""
	validate_epsilon(eps)
	_require_trace_zero(x)
	grid = x.grid
	h = grid.h
	u, sigma, vh = linalg.svd(x.matrix())
	tails = np.concatenate([np.cumsum(sigma[::-1])[::-1], [0.0]])
	rank = int(np.argmax(tails < eps / 4))
	if rank == 0:
		return KernelOperator.zero(grid)
	left = sigma[:rank] * u[:, :rank] / math.sqrt(h)
	right = vh[:rank].conj().T / math.sqrt(h)
	m_max = max_hermite_modes(grid)
	if m_max < 1:
		raise ResolutionExceededError(f"aucun mode d'Hermite résolu sur {grid!r}")
	basis = hermite_basis(grid, m_max).matrix
	budget = eps / (4 * rank)
	scale = sigma[:rank]
	left_res = _projection_residuals(basis, h, left)
	right_res = _projection_residuals(basis, h, right)
	errors = left_res + scale * right_res
	admissible = np.nonzero(np.all(errors < budget, axis=1))[0]
	if admissible.size == 0:
		raise ResolutionExceededError(
			f"projection d'Hermite insuffisante avec m = {m_max} modes (écart {errors[-1].max():.3e} > {budget:.3e})"
		)
	m = int(admissible[0])
	if m == 0:
		return KernelOperator.zero(grid)
	phi = basis[:, :m]
	projector = h * (phi @ phi.conj().T)
	truncated_part = u[:, :rank] @ np.diag(sigma[:rank]) @ vh[:rank]
	compressed = projector @ truncated_part @ projector
	x2 = KernelOperator.from_matrix(grid, compressed)
	ground = hermite_fn(grid, 0)
	w = rank_one(ground, ground)
	z = x2 - w * x2.trace()
	logger.info("approximation : rang %d, %d modes d'Hermite, ||X - Z||_S1 = %.3e", rank, m, (x - z).norm(1.0))
	return z


def synthesis_triangle_bound(rho: PlaneFunction, x: KernelOperator, x_approx: KernelOperator) -> tuple[float, float]:
	"""(||rho·X||_S1, ||rho·X'||_S1 + ||rho||_1 ||X - X'||_S1)."""
	lhs = act_spectral(rho, x).norm(1.0)
	rhs = act_spectral(rho, x_approx).norm(1.0) + rho.lp_norm(1.0) * (x - x_approx).norm(1.0)
	return lhs, rhs


@log_action("construction de rho")
def find_rho(x: KernelOperator, eps: float, fam: MollifierFamily) -> tuple[PlaneFunction, float, Report]:
	"""
	rho = tau_check_delta0 avec ||rho·X||_S1 < eps et hat(rho) = 1 sur B_delta0/2.

	Le budget se répartit en eps/(2V) pour l'approximation et eps/2 pour le
	mollifieur ; delta parcourt 2^-i jusqu'au premier succès.
	"""
	validate_epsilon(eps)
	_check_family(x, fam)
	_require_trace_zero(x)
	versal = fam.versal_constant
	report = make_report("find-rho", x.grid, {"eps": eps})
	report.add_quantity("V", versal)
	try:
		approx = approximate_schwartz(x, eps / (2 * versal))
	except ResolutionExceededError as exc:
		report.check_true("hermite_projection_resolved", False)
		raise ResolutionExceededError(str(exc), exc.best_norm, report) from exc
	report.add_quantity("approximation_error", (x - approx).norm(1.0))
	report.check_le("approximation_budget", (x - approx).norm(1.0), eps / (2 * versal))
	best = math.inf
	i = 0
	while True:
		delta = 2.0**-i
		if not is_resolvable(fam.grid, delta):
			report.add_quantity("best_norm", best)
			report.check_le("final_norm_below_eps", best, eps)
			raise ResolutionExceededError(
				f"échelle épuisée avant ||rho·X'||_S1 < eps/2 (meilleure norme {best:.3e})", best, report
			)
		_, rho = tau_delta(fam, delta)
		norm = act_spectral(rho, approx).norm(1.0)
		report.add_quantity(f"approx_norm_delta_{delta:g}", norm)
		best = min(best, norm)
		if norm < eps / 2:
			break
		i += 1
	lhs, rhs = synthesis_triangle_bound(rho, x, approx)
	plateau = fam.grid.radius() <= delta / 2
	deviation = float(np.abs(fourier_2d(rho, -1).values[plateau] - 1.0).max())
	report.add_quantity("delta0", delta)
	report.add_quantity("final_norm", lhs)
	report.add_quantity("rho_l1_norm", rho.lp_norm(1.0))
	report.add_quantity("plateau_deviation", deviation)
	report.check_le("final_norm_below_eps", lhs, eps)
	report.check_le("hat_rho_equals_one", deviation, PLATEAU_TOLERANCE)
	report.check_le("synthesis_triangle", lhs, rhs, INEQUALITY_SLACK * max(rhs, 1.0))
	return rho, delta, report
