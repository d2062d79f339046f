"""
Module models.operator
Représentation des opérateurs sur L2(R) par leur noyau échantillonné.

Conventions (règle normative) :
- (X g)(v_i) = h * somme_j K(v_i, v_j) g(v_j)
- tr(X) = h * somme_i K(v_i, v_i)
- les valeurs singulières de X sont celles de la matrice h K
"""
from __future__ import annotations

import math

import numpy as np
from scipy import linalg

from alpha_synthesis.models.grid import LineGrid
from alpha_synthesis.utils.config import SURROGATE_BORDER
from alpha_synthesis.utils.validators import (
	GridMismatchError,
	InvalidArgumentError,
	conjugate_exponent,
	validate_exponent,
)


class SchattenExponent:
	"""Exposant p de la classe de Schatten S^p, avec son conjugué p'."""

	def __init__(self, p: float) -> None:
		self._p = validate_exponent(p)

	@property
	def p(self) -> float:
		return self._p

	@property
	def conjugate(self) -> float:
		return conjugate_exponent(self._p)

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, SchattenExponent):
			return NotImplemented
		return self._p == other._p

	def __hash__(self) -> int:
		return hash(self._p)

	def __repr__(self) -> str:
		return f"SchattenExponent({self._p!r})"


class KernelOperator:
	"""
	Opérateur à noyau K(v_i, w_j) sur une `LineGrid`.

	`accuracy_warning` signale un résultat dont le noyau n'est pas négligeable
	au bord de la grille (substitut de Schwartz non vérifié).
	"""

	def __init__(self, grid: LineGrid, kernel, accuracy_warning: bool = False) -> None:
		arr = np.array(kernel, dtype=np.complex128, copy=True)
		if arr.shape != (grid.n, grid.n):
			raise InvalidArgumentError(f"noyau de forme {arr.shape}, attendu {(grid.n, grid.n)}")
		arr.flags.writeable = False
		self._grid = grid
		self._kernel = arr
		self._accuracy_warning = bool(accuracy_warning)
		self._singular_values: np.ndarray | None = None

	@classmethod
	def zero(cls, grid: LineGrid) -> KernelOperator:
		return cls(grid, np.zeros((grid.n, grid.n)))

	@classmethod
	def identity(cls, grid: LineGrid) -> KernelOperator:
		"""Identité : noyau delta_ij / h."""
		return cls(grid, np.eye(grid.n) / grid.h)

	@classmethod
	def from_matrix(cls, grid: LineGrid, matrix, accuracy_warning: bool = False) -> KernelOperator:
		"""Construit l'opérateur dont la matrice d'action est `matrix` (= h K)."""
		return cls(grid, np.asarray(matrix) / grid.h, accuracy_warning)

	@property
	def grid(self) -> LineGrid:
		return self._grid

	@property
	def kernel(self) -> np.ndarray:
		return self._kernel

	@property
	def accuracy_warning(self) -> bool:
		return self._accuracy_warning

	def matrix(self) -> np.ndarray:
		"""Matrice h K agissant sur les vecteurs d'échantillons."""
		return self._grid.h * self._kernel

	def trace(self) -> complex:
		return complex(self._grid.h * np.trace(self._kernel))

	def singular_values(self) -> np.ndarray:
		if self._singular_values is None:
			sv = linalg.svdvals(self.matrix())
			sv.flags.writeable = False
			self._singular_values = sv
		return self._singular_values

	def norm(self, p: float = 1.0) -> float:
		"""Norme de Schatten ; p = inf donne la norme d'opérateur."""
		sv = self.singular_values()
		if math.isinf(p):
			return float(sv.max(initial=0.0))
		return float(np.sum(sv ** p) ** (1.0 / p))

	def boundary_ratio(self, border: int = SURROGATE_BORDER) -> float:
		"""Rapport max|K| sur les `border` lignes/colonnes extérieures / max|K|."""
		mags = np.abs(self._kernel)
		peak = mags.max(initial=0.0)
		if peak == 0.0:
			return 0.0
		edge = max(
			mags[:border].max(), mags[-border:].max(), mags[:, :border].max(), mags[:, -border:].max()
		)
		return float(edge / peak)

	def _check(self, other: KernelOperator) -> None:
		if self._grid != other._grid:
			raise GridMismatchError(f"grilles différentes {self._grid!r} et {other._grid!r}")

	def __add__(self, other: KernelOperator) -> KernelOperator:
		self._check(other)
		flag = self._accuracy_warning or other._accuracy_warning
		return KernelOperator(self._grid, self._kernel + other._kernel, flag)

	def __sub__(self, other: KernelOperator) -> KernelOperator:
		self._check(other)
		flag = self._accuracy_warning or other._accuracy_warning
		return KernelOperator(self._grid, self._kernel - other._kernel, flag)

	def __mul__(self, scalar: complex) -> KernelOperator:
		return KernelOperator(self._grid, self._kernel * scalar, self._accuracy_warning)

	__rmul__ = __mul__

	def __neg__(self) -> KernelOperator:
		return self * -1

	def __repr__(self) -> str:
		return f"KernelOperator({self._grid!r})"
