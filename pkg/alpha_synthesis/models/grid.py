"""
Module models.grid
Grilles uniformes et fonctions échantillonnées sur R et R^2.

Remarques sur la conception :
- Les objets sont immuables : les tableaux sont copiés puis verrouillés en
  écriture, les attributs ne sont exposés qu'en lecture (propriétés).
- Les normes sont pondérées par le pas (quadrature des rectangles).
"""
from __future__ import annotations

import math

import numpy as np

from alpha_synthesis.utils.config import SELF_DUAL_RTOL
from alpha_synthesis.utils.validators import (
	GridMismatchError,
	InvalidArgumentError,
	validate_grid_size,
	validate_spacing,
)


def _frozen(values, shape: tuple[int, ...]) -> np.ndarray:
	arr = np.array(values, dtype=np.complex128, copy=True)
	if arr.shape != shape:
		raise InvalidArgumentError(f"forme {arr.shape} incompatible avec la grille {shape}")
	arr.flags.writeable = False
	return arr


class LineGrid:
	"""
	Grille uniforme de n points v_j = (j - n/2) h sur R.

	La grille est dite auto-duale quand h = n^-1/2 : la grille des fréquences
	(pas 1/(n h)) coïncide alors avec la grille spatiale.
	"""

	def __init__(self, n: int, h: float) -> None:
		validate_grid_size(n)
		validate_spacing(h)
		self._n = int(n)
		self._h = float(h)

	@property
	def n(self) -> int:
		return self._n

	@property
	def h(self) -> float:
		return self._h

	@property
	def points(self) -> np.ndarray:
		return (np.arange(self._n) - self._n // 2) * self._h

	@property
	def extent(self) -> float:
		"""Longueur n h couverte par la grille."""
		return self._n * self._h

	@property
	def self_dual(self) -> bool:
		return abs(self._h * self._h * self._n - 1.0) <= SELF_DUAL_RTOL

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, LineGrid):
			return NotImplemented
		return self._n == other._n and self._h == other._h

	def __hash__(self) -> int:
		return hash((self._n, self._h))

	def __repr__(self) -> str:
		return f"LineGrid(n={self._n}, h={self._h!r})"


class SampledFunction1D:
	"""Fonction complexe échantillonnée sur une `LineGrid`."""

	def __init__(self, grid: LineGrid, values) -> None:
		self._grid = grid
		self._values = _frozen(values, (grid.n,))

	@property
	def grid(self) -> LineGrid:
		return self._grid

	@property
	def values(self) -> np.ndarray:
		return self._values

	def norm(self) -> float:
		"""Norme L2 pondérée (h * somme |f|^2)^1/2."""
		return math.sqrt(self._grid.h) * float(np.linalg.norm(self._values))

	def inner(self, other: SampledFunction1D) -> complex:
		"""Produit scalaire <f, g>_h, linéaire en f."""
		self._check(other)
		return complex(self._grid.h * np.vdot(other._values, self._values))

	def _check(self, other: SampledFunction1D) -> None:
		if self._grid != other._grid:
			raise GridMismatchError(f"grilles différentes {self._grid!r} et {other._grid!r}")

	def __add__(self, other: SampledFunction1D) -> SampledFunction1D:
		self._check(other)
		return SampledFunction1D(self._grid, self._values + other._values)

	def __sub__(self, other: SampledFunction1D) -> SampledFunction1D:
		self._check(other)
		return SampledFunction1D(self._grid, self._values - other._values)

	def __mul__(self, scalar: complex) -> SampledFunction1D:
		return SampledFunction1D(self._grid, self._values * scalar)

	__rmul__ = __mul__

	def __repr__(self) -> str:
		return f"SampledFunction1D({self._grid!r})"


class PlaneGrid:
	"""Grille produit (x, y) ; l'axe 0 porte x, l'axe 1 porte y."""

	def __init__(self, xgrid: LineGrid, ygrid: LineGrid | None = None) -> None:
		self._xgrid = xgrid
		self._ygrid = ygrid if ygrid is not None else xgrid

	@property
	def xgrid(self) -> LineGrid:
		return self._xgrid

	@property
	def ygrid(self) -> LineGrid:
		return self._ygrid

	@property
	def shape(self) -> tuple[int, int]:
		return (self._xgrid.n, self._ygrid.n)

	@property
	def cell_area(self) -> float:
		return self._xgrid.h * self._ygrid.h

	@property
	def self_dual(self) -> bool:
		return self._xgrid.self_dual and self._ygrid.self_dual

	def mesh(self) -> tuple[np.ndarray, np.ndarray]:
		return np.meshgrid(self._xgrid.points, self._ygrid.points, indexing="ij")

	def radius(self) -> np.ndarray:
		x, y = self.mesh()
		return np.hypot(x, y)

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, PlaneGrid):
			return NotImplemented
		return self._xgrid == other._xgrid and self._ygrid == other._ygrid

	def __hash__(self) -> int:
		return hash((self._xgrid, self._ygrid))

	def __repr__(self) -> str:
		return f"PlaneGrid({self._xgrid!r}, {self._ygrid!r})"


class PlaneFunction:
	"""
	Fonction complexe échantillonnée sur une `PlaneGrid`.

	Porte les poids q, les transformées alpha(X), la bosse tau et ses
	dilatées.
	"""

	def __init__(self, grid: PlaneGrid, values) -> None:
		self._grid = grid
		self._values = _frozen(values, grid.shape)

	@property
	def grid(self) -> PlaneGrid:
		return self._grid

	@property
	def values(self) -> np.ndarray:
		return self._values

	def lp_norm(self, p: float) -> float:
		"""Norme L^p pondérée par h_x h_y ; p = inf donne la norme sup."""
		if math.isinf(p):
			return self.sup_norm()
		weighted = self._grid.cell_area * np.sum(np.abs(self._values) ** p)
		return float(weighted ** (1.0 / p))

	def sup_norm(self) -> float:
		return float(np.max(np.abs(self._values)))

	def _check(self, other: PlaneFunction) -> None:
		if self._grid != other._grid:
			raise GridMismatchError(f"grilles différentes {self._grid!r} et {other._grid!r}")

	def __add__(self, other: PlaneFunction) -> PlaneFunction:
		self._check(other)
		return PlaneFunction(self._grid, self._values + other._values)

	def __sub__(self, other: PlaneFunction) -> PlaneFunction:
		self._check(other)
		return PlaneFunction(self._grid, self._values - other._values)

	def __mul__(self, other) -> PlaneFunction:
		if isinstance(other, PlaneFunction):
			self._check(other)
			return PlaneFunction(self._grid, self._values * other._values)
		return PlaneFunction(self._grid, self._values * other)

	__rmul__ = __mul__

	def __repr__(self) -> str:
		return f"PlaneFunction({self._grid!r})"
