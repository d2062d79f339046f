"""
Services de base sur les grilles.

Ce module fournit :
- la construction des grilles (`make_line_grid`, `self_dual_plane_grid`)
- les transformées de Fourier centrées 1D/2D (`fourier_1d`, `fourier_2d`)
- la dérivation spectrale (`spectral_derivative`)
- les fonctions d'Hermite (`hermite_fn`, `hermite_basis`)
- la bosse radiale tau et ses dérivées (`bump_tau`, `bump_profile`)

Convention : g(xi_k) = h * somme_j f(v_j) exp(2 pi i sign xi_k v_j).
Sur une grille auto-duale, xi_k v_j = (k - n/2)(j - n/2)/n, ce qui ramène la
somme à une FFT encadrée par des rampes de phase (-1)^j et (-1)^k.
"""
from __future__ import annotations

import hashlib
import math

import numpy as np
from scipy import fft

from alpha_synthesis.models import (
	HermiteBasis,
	LineGrid,
	PlaneFunction,
	PlaneGrid,
	SampledFunction1D,
)
from alpha_synthesis.utils.config import HERMITE_SAFETY_FACTOR
from alpha_synthesis.utils.decorators import require_self_dual
from alpha_synthesis.utils.validators import (
	InvalidArgumentError,
	ResolutionExceededError,
	validate_grid_size,
	validate_sign,
)

# Définition normative de tau ; son empreinte accompagne chaque rapport.
TAU_DEFINITION = (
	"tau(x,y)=psi(r), r=sqrt(x^2+y^2); psi=1 on r<=1/2, psi=0 on r>=1; "
	"psi(r)=g(1-r)/(g(1-r)+g(r-1/2)) on (1/2,1); g(t)=exp(-1/t) for t>0"
)
PLATEAU_RADIUS = 0.5
SUPPORT_RADIUS = 1.0


# Grilles

def make_line_grid(n: int, mode: str = "self_dual", h: float | None = None) -> LineGrid:
	"""Grille de n points ; `mode` vaut 'self_dual' (h = n^-1/2) ou 'explicit'."""
	validate_grid_size(n)
	if mode == "self_dual":
		return LineGrid(n, 1.0 / math.sqrt(n))
	if mode == "explicit":
		if h is None:
			raise InvalidArgumentError("le mode 'explicit' exige un pas h")
		return LineGrid(n, h)
	raise InvalidArgumentError(f"mode de grille inconnu : {mode!r}")


def self_dual_plane_grid(n: int) -> PlaneGrid:
	return PlaneGrid(make_line_grid(n))


def tau_hash() -> str:
	return hashlib.sha256(TAU_DEFINITION.encode("utf-8")).hexdigest()


# Transformées de Fourier

def _centered_dft(values: np.ndarray, sign: int, h: float, axis: int) -> np.ndarray:
	n = values.shape[axis]
	ramp_shape = [1] * values.ndim
	ramp_shape[axis] = n
	ramp = np.where(np.arange(n) % 2 == 0, 1.0, -1.0).reshape(ramp_shape)
	if sign < 0:
		out = fft.fft(values * ramp, axis=axis)
	else:
		out = n * fft.ifft(values * ramp, axis=axis)
	global_sign = -1.0 if (n // 2) % 2 else 1.0
	return h * global_sign * ramp * out


@require_self_dual
def fourier_1d(f: SampledFunction1D, sign: int) -> SampledFunction1D:
	"""Transformée de Fourier continue approchée sur la grille auto-duale."""
	validate_sign(sign)
	return SampledFunction1D(f.grid, _centered_dft(f.values, sign, f.grid.h, axis=0))


@require_self_dual
def fourier_2d(f: PlaneFunction, sign: int) -> PlaneFunction:
	"""sign = +1 : transformée « check » ; sign = -1 : transformée « hat »."""
	validate_sign(sign)
	values = _centered_dft(f.values, sign, f.grid.xgrid.h, axis=0)
	values = _centered_dft(values, sign, f.grid.ygrid.h, axis=1)
	return PlaneFunction(f.grid, values)


def fourier_axis(values: np.ndarray, sign: int, h: float, axis: int = -1) -> np.ndarray:
	"""Version tableau de `fourier_1d`, appliquée le long d'un axe."""
	validate_sign(sign)
	return _centered_dft(np.asarray(values, dtype=np.complex128), sign, h, axis)


# Dérivation spectrale

def spectral_derivative(values: np.ndarray, h: float, axis: int = 0, order: int = 1) -> np.ndarray:
	"""
	Dérivée d'ordre `order` le long de `axis` par multiplication par 2 pi i xi.

	Le mode de Nyquist est annulé à chaque étape ; une dérivée seconde est
	deux dérivées premières.
	"""
	if order < 0:
		raise InvalidArgumentError(f"ordre de dérivation négatif : {order}")
	out = np.asarray(values, dtype=np.complex128)
	n = out.shape[axis]
	shape = [1] * out.ndim
	shape[axis] = n
	multiplier = 2j * math.pi * fft.fftfreq(n, d=h)
	if n % 2 == 0:
		multiplier[n // 2] = 0.0
	multiplier = multiplier.reshape(shape)
	for _ in range(order):
		out = fft.ifft(multiplier * fft.fft(out, axis=axis), axis=axis)
	return out


def finite_difference(values: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
	"""Différence centrée d'ordre 2 (oracle de test), bords périodiques."""
	values = np.asarray(values, dtype=np.complex128)
	return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2 * h)


# Fonctions d'Hermite

def _check_hermite_resolution(grid: LineGrid, k: int) -> None:
	turning = math.sqrt((2 * k + 1) / (2 * math.pi))
	reach = grid.extent / 2
	if reach < HERMITE_SAFETY_FACTOR * turning:
		raise ResolutionExceededError(
			f"phi_{k} non résolue : demi-étendue {reach:.3f} < {HERMITE_SAFETY_FACTOR} x {turning:.3f}"
		)


def _hermite_rows(t: np.ndarray, m: int) -> np.ndarray:
	"""Fonctions d'Hermite physiques normalisées h_0..h_{m-1} en x = sqrt(2 pi) t."""
	x = math.sqrt(2 * math.pi) * t
	rows = np.zeros((m, t.size))
	rows[0] = math.pi**-0.25 * np.exp(-(x**2) / 2)
	if m > 1:
		rows[1] = math.sqrt(2.0) * x * rows[0]
	for k in range(1, m - 1):
		rows[k + 1] = x * math.sqrt(2.0 / (k + 1)) * rows[k] - math.sqrt(k / (k + 1)) * rows[k - 1]
	return (2 * math.pi) ** 0.25 * rows


def hermite_fn(grid: LineGrid, k: int) -> SampledFunction1D:
	"""k-ième fonction propre de H, de norme h unitaire."""
	if k < 0:
		raise InvalidArgumentError(f"indice d'Hermite négatif : {k}")
	return hermite_basis(grid, k + 1)[k]


def hermite_basis(grid: LineGrid, m: int) -> HermiteBasis:
	"""Les m premières fonctions d'Hermite, générées par une seule récurrence."""
	if m < 1:
		raise InvalidArgumentError(f"nombre de modes invalide : {m}")
	_check_hermite_resolution(grid, m - 1)
	rows = _hermite_rows(grid.points, m)
	norms = np.sqrt(grid.h) * np.linalg.norm(rows, axis=1)
	functions = [SampledFunction1D(grid, rows[k] / norms[k]) for k in range(m)]
	return HermiteBasis(grid, functions)


# Bosse tau

def _g(t: np.ndarray) -> np.ndarray:
	with np.errstate(divide="ignore", over="ignore"):
		return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)


def _g_derivatives(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
	g = _g(t)
	safe = np.where(g > 0, t, 1.0)
	with np.errstate(over="ignore", invalid="ignore"):
		d1 = np.where(g > 0, g / safe**2, 0.0)
		d2 = np.where(g > 0, g * (1.0 / safe**4 - 2.0 / safe**3), 0.0)
	return g, d1, d2


def bump_profile(r) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
	"""
	Profil radial psi et ses dérivées psi', psi'' aux rayons r.

	psi = a / (a + b), a = g(1 - r), b = g(r - 1/2).
	"""
	r = np.asarray(r, dtype=float)
	psi = np.where(r <= PLATEAU_RADIUS, 1.0, 0.0)
	d1 = np.zeros_like(r)
	d2 = np.zeros_like(r)
	mid = (r > PLATEAU_RADIUS) & (r < SUPPORT_RADIUS)
	if np.any(mid):
		rm = r[mid]
		a, da, dda = _g_derivatives(SUPPORT_RADIUS - rm)
		b, db, ddb = _g_derivatives(rm - PLATEAU_RADIUS)
		da = -da
		s = a + b
		ds = da + db
		num = da * b - a * db
		dnum = dda * b - a * ddb
		psi[mid] = a / s
		d1[mid] = num / s**2
		d2[mid] = (dnum * s - 2 * num * ds) / s**3
	return psi, d1, d2


def bump_laplacian(r) -> np.ndarray:
	"""Laplacien de la fonction radiale psi(|z|) : psi'' + psi'/r (nul au centre)."""
	r = np.asarray(r, dtype=float)
	_, d1, d2 = bump_profile(r)
	with np.errstate(divide="ignore", invalid="ignore"):
		radial = np.where(r > 0, d1 / np.where(r > 0, r, 1.0), 0.0)
	return d2 + radial


def bump_tau(grid: PlaneGrid) -> PlaneFunction:
	"""tau(x, y) = psi(r) sur la grille ; la grille doit contenir B_1."""
	for axis in (grid.xgrid, grid.ygrid):
		if axis.points[-1] < SUPPORT_RADIUS:
			raise InvalidArgumentError(f"la grille {axis!r} ne contient pas la boule unité")
	psi, _, _ = bump_profile(grid.radius())
	return PlaneFunction(grid, psi)
