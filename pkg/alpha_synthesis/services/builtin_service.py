"""
Registre des opérateurs prédéfinis.

Les définitions sont lues depuis `DATA_FILE` (JSON) ; les constructions
aléatoires ne dépendent que de la graine.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List

import numpy as np

from alpha_synthesis.models import KernelOperator, LineGrid
from alpha_synthesis.services.grid_service import hermite_basis
from alpha_synthesis.services.operator_service import rank_one
from alpha_synthesis.utils.config import DATA_FILE
from alpha_synthesis.utils.validators import InvalidArgumentError


class BuiltinNotFoundError(InvalidArgumentError):
	pass


def hermite_mixture(grid: LineGrid, coefficients: np.ndarray) -> KernelOperator:
	"""Somme c_jk phi_j ⊗ conj(phi_k)."""
	m = coefficients.shape[0]
	phi = hermite_basis(grid, m).matrix
	return KernelOperator(grid, phi @ coefficients @ phi.conj().T)


def random_coefficients(modes: int, seed: int, trace_zero: bool = True) -> np.ndarray:
	rng = np.random.default_rng(seed)
	coefficients = rng.standard_normal((modes, modes)) + 1j * rng.standard_normal((modes, modes))
	if trace_zero:
		coefficients -= np.eye(modes) * (np.trace(coefficients) / modes)
	return coefficients


class BuiltinService:
	"""Service d'accès aux opérateurs prédéfinis.

	- charge les définitions depuis un fichier JSON
	- construit l'opérateur demandé sur une grille donnée
	"""

	def __init__(self, data_file: Path = DATA_FILE) -> None:
		self.data_file = Path(data_file)
		self.definitions: Dict[str, dict] = {}
		self._load()

	def _load(self) -> None:
		with open(self.data_file, "r", encoding="utf-8") as f:
			data = json.load(f) or {}
		for entry in data.get("builtins", []):
			self.definitions[entry["name"]] = entry

	def lister_builtins(self) -> List[str]:
		return sorted(self.definitions)

	def rechercher(self, name: str) -> dict:
		"""Lève `BuiltinNotFoundError` si le nom est inconnu."""
		entry = self.definitions.get(name)
		if entry is None:
			raise BuiltinNotFoundError(f"opérateur prédéfini inconnu : {name!r}")
		return entry

	def construire(self, name: str, grid: LineGrid, seed: int = 0) -> KernelOperator:
		entry = self.rechercher(name)
		construction = entry["construction"]
		if construction == "rank_one":
			basis = hermite_basis(grid, max(entry["left"], entry["right"]) + 1)
			return rank_one(basis[entry["left"]], basis[entry["right"]])
		if construction == "hermite_mixture":
			coefficients = random_coefficients(entry["modes"], seed, entry.get("trace_zero", True))
			return hermite_mixture(grid, coefficients)
		raise InvalidArgumentError(f"construction inconnue {construction!r} pour {name!r}")
