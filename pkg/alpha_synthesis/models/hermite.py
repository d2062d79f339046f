"""
Module models.hermite
Contient la classe `HermiteBasis` : premières fonctions propres de
l'oscillateur harmonique échantillonnées sur une grille.
"""
from __future__ import annotations

import math
from typing import List

import numpy as np

from alpha_synthesis.models.grid import LineGrid, SampledFunction1D


class HermiteBasis:
	"""
	Famille phi_0..phi_{m-1} avec H phi_k = -2 pi (2k+1) phi_k.

	Attributs :
	- grid : LineGrid
	- functions : liste de SampledFunction1D (norme h unitaire)
	"""

	def __init__(self, grid: LineGrid, functions: List[SampledFunction1D]) -> None:
		self._grid = grid
		self._functions = tuple(functions)
		columns = [f.values for f in self._functions]
		mat = np.stack(columns, axis=1) if columns else np.zeros((grid.n, 0), dtype=np.complex128)
		mat.flags.writeable = False
		self._matrix = mat

	@property
	def grid(self) -> LineGrid:
		return self._grid

	@property
	def m(self) -> int:
		return len(self._functions)

	@property
	def functions(self) -> tuple[SampledFunction1D, ...]:
		return self._functions

	@property
	def matrix(self) -> np.ndarray:
		"""Matrice n x m dont la colonne k est phi_k."""
		return self._matrix

	def eigenvalues(self) -> np.ndarray:
		return -2 * math.pi * (2 * np.arange(self.m) + 1)

	def gram(self) -> np.ndarray:
		"""Produits scalaires <phi_j, phi_k>_h."""
		return self._grid.h * (self._matrix.conj().T @ self._matrix)

	def __getitem__(self, k: int) -> SampledFunction1D:
		return self._functions[k]

	def __len__(self) -> int:
		return self.m

	def __repr__(self) -> str:
		return f"HermiteBasis({self._grid!r}, m={self.m})"
