"""
Transformée alpha, son inverse Theta et les inégalités de normes associées.

alpha(X)(x, y) = tr(T_-x M_-y X) = int exp(2 pi i y v) K(v, v - x) dv
Theta(f) a pour noyau K(v, w) = int f(v - w, y) exp(-2 pi i y v) dy

Sur la grille auto-duale, x parcourt les multiples de h : la tranche
x = s h de alpha(X) est la transformée (signe +1) de la diagonale
j -> K[j, j - s] (indices cycliques), et Theta en est l'inverse exact.
"""
from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from alpha_synthesis.models import KernelOperator, LineGrid, PlaneFunction, PlaneGrid, Report
from alpha_synthesis.services.grid_service import fourier_axis, tau_hash
from alpha_synthesis.services.operator_service import op_compose, phase_space_shift
from alpha_synthesis.utils.config import INEQUALITY_SLACK, SURROGATE_BORDER, SURROGATE_THRESHOLD
from alpha_synthesis.utils.decorators import log_action, require_self_dual
from alpha_synthesis.utils.validators import InvalidArgumentError, UnsupportedGridError, conjugate_exponent


def make_report(suite: str, grid: LineGrid, inputs: Optional[dict] = None) -> Report:
	"""Rapport vide portant la grille et l'empreinte de tau."""
	return Report(suite, {"n": grid.n, "h": grid.h}, inputs or {}, tau_hash())


def _diagonal_columns(n: int) -> tuple[np.ndarray, np.ndarray]:
	"""Indices (ligne j, colonne (j - s_m) mod n) de la diagonale d'offset s_m = m - n/2."""
	j = np.arange(n)
	offsets = j - n // 2
	rows = np.broadcast_to(j[None, :], (n, n))
	cols = (j[None, :] - offsets[:, None]) % n
	return rows, cols


def _plane_grid_of(grid: LineGrid) -> PlaneGrid:
	return PlaneGrid(grid)


@require_self_dual
def alpha(x: KernelOperator) -> PlaneFunction:
	"""alpha(X) sur la grille produit (voie rapide)."""
	grid = x.grid
	rows, cols = _diagonal_columns(grid.n)
	diagonals = x.kernel[rows, cols]
	values = fourier_axis(diagonals, 1, grid.h, axis=1)
	return PlaneFunction(_plane_grid_of(grid), values)


def alpha_direct(x: KernelOperator, xs: float, ys: float) -> complex:
	"""Oracle : h-trace de T_-x M_-y X en un point quelconque (x, y)."""
	shift = phase_space_shift(x.grid, xs, ys)
	return complex(np.trace(shift @ x.matrix()))


@require_self_dual
def theta(f: PlaneFunction) -> KernelOperator:
	"""Theta(f) : transformée (signe -1) selon y puis report sur les diagonales."""
	plane = f.grid
	if plane.xgrid != plane.ygrid:
		raise UnsupportedGridError(f"theta exige deux axes identiques, reçu {plane!r}")
	grid = plane.xgrid
	diagonals = fourier_axis(f.values, -1, grid.h, axis=1)
	rows, cols = _diagonal_columns(grid.n)
	kernel = np.zeros((grid.n, grid.n), dtype=np.complex128)
	kernel[rows, cols] = diagonals
	return KernelOperator(grid, kernel)


def plane_boundary_ratio(f: PlaneFunction, border: int = SURROGATE_BORDER) -> float:
	"""Rapport max|f| sur la bordure / max|f|."""
	mags = np.abs(f.values)
	peak = mags.max(initial=0.0)
	if peak == 0.0:
		return 0.0
	edge = max(mags[:border].max(), mags[-border:].max(), mags[:, :border].max(), mags[:, -border:].max())
	return float(edge / peak)


# Vérifications

@log_action("vérification de l'inversion alpha(Theta(f)) = f")
def verify_inversion(f: PlaneFunction, tolerance: float = 1e-8) -> Report:
	grid = f.grid.xgrid
	report = make_report("inversion", grid)
	scale = f.sup_norm()
	error = (alpha(theta(f)) - f).sup_norm()
	relative = error / scale if scale > 0 else error
	report.add_quantity("sup_norm_f", scale)
	report.add_quantity("relative_error", relative)
	report.add_quantity("boundary_ratio", plane_boundary_ratio(f))
	report.check_le("alpha_theta_identity", relative, tolerance)
	return report


@log_action("vérification de Hausdorff-Young pour Theta")
def verify_hausdorff_young(f: PlaneFunction, p: float) -> Report:
	"""||Theta(f)||_{S^p'} <= ||f||_p pour 1 <= p <= 2."""
	if not 1 <= p <= 2:
		raise InvalidArgumentError(f"p doit être dans [1, 2], reçu {p}")
	grid = f.grid.xgrid
	conjugate = conjugate_exponent(p)
	report = make_report("hausdorff-young", grid, {"p": p})
	lhs = theta(f).norm(conjugate)
	rhs = f.lp_norm(p)
	ratio = lhs / rhs if rhs > 0 else 0.0
	report.add_quantity("p", float(p))
	report.add_quantity("conjugate", conjugate)
	report.add_quantity("theta_norm", lhs)
	report.add_quantity("lp_norm", rhs)
	report.add_quantity("ratio", ratio)
	report.check_le(f"theta_bound_p{p:g}", lhs, rhs, INEQUALITY_SLACK * max(rhs, 1.0))
	return report


@log_action("vérification de Plancherel pour Theta")
def verify_plancherel(f: PlaneFunction, tolerance: float = 1e-8) -> Report:
	"""||Theta(f)||_{S^2} = ||f||_2."""
	grid = f.grid.xgrid
	report = make_report("plancherel", grid)
	lhs = theta(f).norm(2.0)
	rhs = f.lp_norm(2.0)
	ratio = lhs / rhs if rhs > 0 else 1.0
	report.add_quantity("theta_s2_norm", lhs)
	report.add_quantity("l2_norm", rhs)
	report.add_quantity("ratio", ratio)
	report.check_close("isometry_ratio", ratio, 1.0, tolerance)
	return report


@log_action("vérification de la borne ||alpha(X)||_inf <= ||X||_S1")
def verify_sup_bound(x: KernelOperator) -> Report:
	report = make_report("sup-bound", x.grid)
	lhs = alpha(x).sup_norm()
	rhs = x.norm(1.0)
	report.add_quantity("alpha_sup_norm", lhs)
	report.add_quantity("s1_norm", rhs)
	report.check_le("alpha_sup_le_trace_norm", lhs, rhs, INEQUALITY_SLACK * max(rhs, 1.0))
	return report


@log_action("vérification de ||Theta(f)||_op <= ||f||_1")
def verify_operator_bound(f: PlaneFunction) -> Report:
	report = make_report("operator-bound", f.grid.xgrid)
	lhs = theta(f).norm(math.inf)
	rhs = f.lp_norm(1.0)
	report.add_quantity("theta_operator_norm", lhs)
	report.add_quantity("l1_norm", rhs)
	report.check_le("theta_op_le_l1", lhs, rhs, INEQUALITY_SLACK * max(rhs, 1.0))
	return report


@log_action("vérification de la décroissance de alpha(X) au bord")
def verify_riemann_lebesgue(x: KernelOperator, threshold: float = SURROGATE_THRESHOLD) -> Report:
	"""alpha(X) est bornée par ||X||_S1 et négligeable au bord de la grille."""
	report = verify_sup_bound(x)
	report.suite = "riemann-lebesgue"
	ratio = plane_boundary_ratio(alpha(x))
	report.add_quantity("alpha_boundary_ratio", ratio)
	report.check_le("alpha_vanishes_at_boundary", ratio, threshold)
	return report


@log_action("vérification de l'inégalité de Hölder")
def verify_hoelder(a: KernelOperator, b: KernelOperator, exponents: Iterable[float]) -> Report:
	"""||AB||_S1 <= ||A||_{S^p} ||B||_{S^p'} pour chaque p."""
	report = make_report("hoelder", a.grid)
	product = op_compose(a, b).norm(1.0)
	report.add_quantity("product_s1_norm", product)
	for p in exponents:
		conjugate = conjugate_exponent(p)
		rhs = a.norm(p) * b.norm(conjugate)
		report.add_quantity(f"bound_p{p:g}", rhs)
		report.check_le(f"hoelder_p{p:g}", product, rhs, INEQUALITY_SLACK * max(rhs, 1.0))
	return report
