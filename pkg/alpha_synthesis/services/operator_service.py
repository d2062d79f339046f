"""
Services sur les opérateurs à noyau.

Ce module fournit :
- construction : `rank_one`, `op_compose`
- normes de Schatten : `schatten_norm`
- unitaires de translation et de modulation : `translate_op`, `modulate_op`
- action de Heisenberg : `heisenberg_action`
- opérateurs P, Q, H et H^-1 : `apply_P`, `apply_Q`, `apply_H`, `apply_H_inv`

Les translations et modulations imprimées sont T_x s(t) = s(t - x) et
M_y s(t) = exp(-2 pi i y t) s(t). L'action de Heisenberg utilise la paire
réfléchie T_-x, M_-y ; son noyau est
exp(-2 pi i x1 (v - w)) K(v + y1, w + y1).
"""
from __future__ import annotations

import math

import numpy as np
from scipy import linalg

from alpha_synthesis.models import KernelOperator, LineGrid, SampledFunction1D, SchattenExponent
from alpha_synthesis.services.grid_service import fourier_axis, hermite_basis, spectral_derivative
from alpha_synthesis.utils.config import OSCILLATOR_SERIES_TERMS, SURROGATE_THRESHOLD
from alpha_synthesis.utils.decorators import require_same_grid
from alpha_synthesis.utils.validators import (
	InvalidArgumentError,
	UnsupportedGridError,
	validate_exponent,
)

# Tolérance pour reconnaître un décalage multiple entier du pas
_ON_GRID_RTOL = 1e-12


def _require_self_dual_grid(grid: LineGrid, name: str) -> None:
	if not grid.self_dual:
		raise UnsupportedGridError(f"{name} exige une grille auto-duale (h = n^-1/2), reçu {grid!r}")


def _grid_steps(grid: LineGrid, shift: float) -> int | None:
	"""Nombre de pas b si shift = b h, sinon None."""
	steps = shift / grid.h
	nearest = round(steps)
	if abs(steps - nearest) <= _ON_GRID_RTOL * max(1.0, abs(steps)):
		return int(nearest)
	return None


# Construction

@require_same_grid
def rank_one(phi: SampledFunction1D, psi: SampledFunction1D) -> KernelOperator:
	"""phi ⊗ conj(psi) : noyau phi(v) conj(psi(w))."""
	return KernelOperator(phi.grid, np.outer(phi.values, psi.values.conj()))


@require_same_grid
def op_compose(a: KernelOperator, b: KernelOperator) -> KernelOperator:
	"""Noyau de AB : h somme_u A(v, u) B(u, w)."""
	flag = a.accuracy_warning or b.accuracy_warning
	return KernelOperator(a.grid, a.grid.h * (a.kernel @ b.kernel), flag)


def schatten_norm(x: KernelOperator, p: SchattenExponent | float = 1.0) -> float:
	exponent = p.p if isinstance(p, SchattenExponent) else validate_exponent(p)
	return x.norm(exponent)


# Translations et modulations

def translate_op(grid: LineGrid, x: float) -> KernelOperator:
	"""
	T_x = F^-1 diag(exp(-2 pi i xi x)) F ; exact (décalage cyclique) si x = b h.

	La relation de Weyl T_x M_y = exp(2 pi i x y) M_y T_x n'est exacte sur la
	grille que pour x et y multiples de h.
	"""
	_require_self_dual_grid(grid, "translate_op")
	phase = np.exp(-2j * math.pi * grid.points * x)
	spectrum = fourier_axis(np.eye(grid.n), -1, grid.h, axis=0)
	matrix = fourier_axis(phase[:, None] * spectrum, 1, grid.h, axis=0)
	return KernelOperator.from_matrix(grid, matrix)


def modulate_op(grid: LineGrid, y: float) -> KernelOperator:
	"""M_y = diag(exp(-2 pi i y v_j))."""
	return KernelOperator.from_matrix(grid, np.diag(np.exp(-2j * math.pi * y * grid.points)))


def phase_space_shift(grid: LineGrid, x: float, y: float) -> np.ndarray:
	"""Matrice de T_-x M_-y, la paire réfléchie sous la trace de alpha."""
	return translate_op(grid, -x).matrix() @ modulate_op(grid, -y).matrix()


def heisenberg_action(x1: float, y1: float, x: KernelOperator) -> KernelOperator:
	"""(x1, y1)·X : noyau exp(-2 pi i x1 (v - w)) K(v + y1, w + y1)."""
	grid = x.grid
	_require_self_dual_grid(grid, "heisenberg_action")
	v = grid.points
	modulated = np.exp(-2j * math.pi * x1 * (v[:, None] - v[None, :])) * x.kernel
	steps = _grid_steps(grid, y1)
	if steps is not None:
		kernel = np.roll(modulated, -steps, axis=(0, 1))
		return KernelOperator(grid, kernel, x.accuracy_warning)
	shift = translate_op(grid, -y1).matrix()
	kernel = shift @ modulated @ shift.conj().T
	return KernelOperator(grid, kernel, x.accuracy_warning)


# Opérateurs P, Q, H

def _flag(x: KernelOperator, kernel: np.ndarray) -> bool:
	result = KernelOperator(x.grid, kernel)
	return x.accuracy_warning or result.boundary_ratio() > SURROGATE_THRESHOLD


def apply_P(x: KernelOperator) -> KernelOperator:
	"""PX : dérivée spectrale du noyau selon la première variable."""
	kernel = spectral_derivative(x.kernel, x.grid.h, axis=0)
	return KernelOperator(x.grid, kernel, _flag(x, kernel))


def apply_Q(x: KernelOperator) -> KernelOperator:
	"""QX : noyau 2 pi i v K(v, w)."""
	kernel = 2j * math.pi * x.grid.points[:, None] * x.kernel
	return KernelOperator(x.grid, kernel, _flag(x, kernel))


def apply_H(x: KernelOperator) -> KernelOperator:
	"""H = P^2 + Q^2 appliqué à gauche."""
	return apply_P(apply_P(x)) + apply_Q(apply_Q(x))


def apply_H_inv(x: KernelOperator, m: int) -> KernelOperator:
	"""
	H^-1 sur les m premiers modes : développement du facteur gauche dans la
	base d'Hermite puis division du mode k par -2 pi (2k+1).
	"""
	basis = hermite_basis(x.grid, m)
	phi = basis.matrix
	coefficients = x.grid.h * (phi.conj().T @ x.kernel)
	kernel = phi @ (coefficients / basis.eigenvalues()[:, None])
	return KernelOperator(x.grid, kernel, x.accuracy_warning)


def oscillator_apply(f: SampledFunction1D) -> SampledFunction1D:
	"""H f = f'' - 4 pi^2 t^2 f."""
	second = spectral_derivative(f.values, f.grid.h, order=2)
	return SampledFunction1D(f.grid, second - 4 * math.pi**2 * f.grid.points**2 * f.values)


def oscillator_inverse_norm(p: float, m: int = OSCILLATOR_SERIES_TERMS) -> float:
	"""Norme S^p de H^-1 tronquée à m modes (série en p)."""
	p = validate_exponent(p)
	if m < 1:
		raise InvalidArgumentError(f"nombre de modes invalide : {m}")
	inverse = 1.0 / (2 * math.pi * (2 * np.arange(m) + 1))
	if math.isinf(p):
		return float(inverse[0])
	return float(np.sum(inverse**p) ** (1.0 / p))


def grid_oscillator_matrix(grid: LineGrid) -> np.ndarray:
	"""Matrice de H agissant sur les vecteurs d'échantillons."""
	second = spectral_derivative(np.eye(grid.n), grid.h, axis=0, order=2)
	return second - np.diag(4 * math.pi**2 * grid.points**2)


def grid_oscillator_inverse_norm(grid: LineGrid, p: float) -> float:
	"""Norme S^p de l'inverse de la matrice de H sur la grille."""
	p = validate_exponent(p)
	matrix = grid_oscillator_matrix(grid)
	eigenvalues = linalg.eigvalsh((matrix + matrix.conj().T) / 2)
	inverse = 1.0 / np.abs(eigenvalues)
	if math.isinf(p):
		return float(inverse.max())
	return float(np.sum(inverse**p) ** (1.0 / p))

