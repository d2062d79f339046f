"""
Action de module q·X de L1(R^2) sur les opérateurs.

Deux voies coexistent :
- `act_direct` : quadrature h^2 somme q(x1, y1) (x1, y1)·X (oracle, petites grilles)
- `act_spectral` : Theta(hat(q) alpha(X)) (voie rapide)

Les identités de dérivation et d'entrelacement sont vérifiées en comparant
les deux membres calculés indépendamment.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from alpha_synthesis.models import KernelOperator, PlaneFunction, Report
from alpha_synthesis.services.alpha_service import alpha, make_report, theta
from alpha_synthesis.services.differential_service import d_operator, partial_y, twisted_x
from alpha_synthesis.services.grid_service import fourier_2d
from alpha_synthesis.services.operator_service import apply_H, apply_P, apply_Q, heisenberg_action
from alpha_synthesis.utils.config import DIRECT_ACTION_CAP, LOGGER_NAME, SURROGATE_THRESHOLD, thread_count
from alpha_synthesis.utils.decorators import log_action
from alpha_synthesis.utils.validators import BudgetExceededError, GridMismatchError

logger = logging.getLogger(LOGGER_NAME)


def _check_action_grids(q: PlaneFunction, x: KernelOperator) -> None:
	if q.grid.xgrid != x.grid or q.grid.ygrid != x.grid:
		raise GridMismatchError(f"poids {q.grid!r} incompatible avec l'opérateur {x.grid!r}")


def _partial_action(q: PlaneFunction, x: KernelOperator, rows: range) -> np.ndarray:
	points = x.grid.points
	weight = q.grid.cell_area
	total = np.zeros((x.grid.n, x.grid.n), dtype=np.complex128)
	for a in rows:
		for b in range(q.values.shape[1]):
			coefficient = q.values[a, b]
			if coefficient == 0:
				continue
			total += weight * coefficient * heisenberg_action(points[a], points[b], x).kernel
	return total


@log_action("action de module par quadrature")
def act_direct(q: PlaneFunction, x: KernelOperator, cap: int = DIRECT_ACTION_CAP) -> KernelOperator:
	"""
	q·X par somme directe des conjugués de Heisenberg.

	Les sommes partielles par bloc de lignes sont additionnées dans l'ordre
	des blocs, quel que soit le nombre de threads.
	"""
	_check_action_grids(q, x)
	n = x.grid.n
	if n > cap:
		raise BudgetExceededError(f"act_direct limité à n <= {cap}, reçu n = {n}")
	workers = min(thread_count(), n)
	bounds = np.linspace(0, n, workers + 1).astype(int)
	blocks = [range(bounds[i], bounds[i + 1]) for i in range(workers)]
	if workers == 1:
		partials = [_partial_action(q, x, blocks[0])]
	else:
		with ThreadPoolExecutor(max_workers=workers) as pool:
			partials = list(pool.map(lambda rows: _partial_action(q, x, rows), blocks))
	kernel = np.zeros((n, n), dtype=np.complex128)
	for partial in partials:
		kernel += partial
	return KernelOperator(x.grid, kernel, x.accuracy_warning)


@log_action("action de module spectrale")
def act_spectral(q: PlaneFunction, x: KernelOperator) -> KernelOperator:
	"""q·X = Theta(hat(q) alpha(X))."""
	_check_action_grids(q, x)
	multiplier = fourier_2d(q, -1)
	result = theta(multiplier * alpha(x))
	flag = x.accuracy_warning or x.boundary_ratio() > SURROGATE_THRESHOLD
	if flag:
		logger.warning("act_spectral : noyau non négligeable au bord (substitut de Schwartz non vérifié)")
	return KernelOperator(x.grid, result.kernel, flag)


def _weighted(q: PlaneFunction, axis: int) -> PlaneFunction:
	"""-2 pi i x1 q (axis 0) ou -2 pi i y1 q (axis 1)."""
	coordinate = q.grid.mesh()[axis]
	return q * (-2j * math.pi * coordinate)


def _product_rule(q: PlaneFunction, x: KernelOperator, which: str) -> Report:
	apply = apply_P if which == "P" else apply_Q
	axis = 0 if which == "P" else 1
	report = make_report(f"product-rule-{which}", x.grid)
	lhs = apply(act_direct(q, x))
	rhs = act_direct(_weighted(q, axis), x) + act_direct(q, apply(x))
	scale = lhs.norm(1.0)
	distance = (lhs - rhs).norm(1.0)
	report.add_quantity("lhs_s1_norm", scale)
	report.add_quantity("s1_distance", distance)
	report.check_le(f"product_rule_{which}", distance, 1e-2 * scale)
	return report


@log_action("vérification de la règle de Leibniz pour P")
def verify_product_rule_P(q: PlaneFunction, x: KernelOperator) -> Report:
	"""P(q·X) = (-2 pi i x1 q)·X + q·(PX)."""
	return _product_rule(q, x, "P")


@log_action("vérification de la règle de Leibniz pour Q")
def verify_product_rule_Q(q: PlaneFunction, x: KernelOperator) -> Report:
	"""Q(q·X) = (-2 pi i y1 q)·X + q·(QX)."""
	return _product_rule(q, x, "Q")


@log_action("vérification des identités de dérivation de alpha")
def verify_alpha_derivatives(x: KernelOperator, tolerance: float = 1e-6) -> Report:
	"""alpha(PX) = (d/dx - 2 pi i y) alpha(X) et alpha(QX) = d/dy alpha(X)."""
	report = make_report("derivatives", x.grid)
	transform = alpha(x)
	error_p = (alpha(apply_P(x)) - twisted_x(transform)).sup_norm()
	error_q = (alpha(apply_Q(x)) - partial_y(transform)).sup_norm()
	report.add_quantity("alpha_sup_norm", transform.sup_norm())
	report.add_quantity("error_P", error_p)
	report.add_quantity("error_Q", error_q)
	report.check_le("alpha_PX", error_p, tolerance)
	report.check_le("alpha_QX", error_q, tolerance)
	return report


@log_action("vérification de alpha(H(q·X)) = D alpha(q·X)")
def verify_oscillator_intertwine(q: PlaneFunction, x: KernelOperator, tolerance: float = 1e-3) -> Report:
	report = make_report("oscillator-intertwine", x.grid)
	acted = act_spectral(q, x)
	lhs = alpha(apply_H(acted))
	rhs = d_operator(alpha(acted))
	scale = lhs.sup_norm()
	error = (lhs - rhs).sup_norm()
	relative = error / scale if scale > 0 else error
	report.add_quantity("lhs_sup_norm", scale)
	report.add_quantity("relative_error", relative)
	report.check_le("alpha_H_equals_D_alpha", relative, tolerance)
	return report


@log_action("vérification de alpha(q·X) = hat(q) alpha(X)")
def verify_multiplier(q: PlaneFunction, x: KernelOperator, route: str = "spectral", tolerance: float = 1e-6) -> Report:
	"""Identité multiplicative par la voie `route` ('direct' ou 'spectral')."""
	act = act_direct if route == "direct" else act_spectral
	report = make_report(f"multiplier-{route}", x.grid)
	expected = fourier_2d(q, -1) * alpha(x)
	error = (alpha(act(q, x)) - expected).sup_norm()
	report.add_quantity("expected_sup_norm", expected.sup_norm())
	report.add_quantity("sup_error", error)
	report.check_le(f"multiplier_{route}", error, tolerance)
	return report
