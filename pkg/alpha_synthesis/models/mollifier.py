"""
Module models.mollifier
Contient les classes `MollifierFamily`, `ConstantsLedger`, `DecayRow` et
`DecayTable` utilisées par la synthèse spectrale.
"""
from __future__ import annotations

import math
from typing import List, Sequence

import numpy as np

from alpha_synthesis.models.grid import PlaneFunction, PlaneGrid


class MollifierFamily:
	"""
	Bosse tau et sa transformée inverse tau_check sur une grille plane.

	Attributs :
	- grid : PlaneGrid
	- tau : PlaneFunction (1 sur B_1/2, support dans B_1)
	- tau_check : PlaneFunction
	- versal_constant : ||tau_check||_1 sur la grille
	- tau_hash : empreinte de la définition de tau
	"""

	def __init__(
		self,
		grid: PlaneGrid,
		tau: PlaneFunction,
		tau_check: PlaneFunction,
		versal_constant: float,
		tau_hash: str,
	) -> None:
		self._grid = grid
		self._tau = tau
		self._tau_check = tau_check
		self._versal_constant = float(versal_constant)
		self._tau_hash = tau_hash

	@property
	def grid(self) -> PlaneGrid:
		return self._grid

	@property
	def tau(self) -> PlaneFunction:
		return self._tau

	@property
	def tau_check(self) -> PlaneFunction:
		return self._tau_check

	@property
	def versal_constant(self) -> float:
		return self._versal_constant

	@property
	def tau_hash(self) -> str:
		return self._tau_hash

	def __repr__(self) -> str:
		return f"MollifierFamily({self._grid!r}, V={self._versal_constant:.6g})"


class ConstantsLedger:
	"""
	Constantes de la borne ponctuelle sur D(tau_delta alpha(X)).

	C1, C2 : sup de |grad alpha| et |Delta alpha| sur B_1.
	D1, D2, D3 : sup de |tau|, |grad tau| et |Delta tau|.
	"""

	def __init__(self, C1: float, C2: float, D1: float, D2: float, D3: float) -> None:
		self.C1 = float(C1)
		self.C2 = float(C2)
		self.D1 = float(D1)
		self.D2 = float(D2)
		self.D3 = float(D3)

	@property
	def A1(self) -> float:
		return self.D3 * self.C1

	@property
	def A2(self) -> float:
		return (2 + 4 * math.pi) * self.D2 * self.C1

	@property
	def A3(self) -> float:
		return self.D1 * self.C2 + (4 * math.pi + 4 * math.pi**2) * self.D1 * self.C1

	def pointwise_bound(self, r: np.ndarray, delta: float) -> np.ndarray:
		"""Borne A1 |z|/delta^2 + A2/delta + A3 sur B_delta, nulle au-delà."""
		r = np.asarray(r, dtype=float)
		bound = self.A1 * r / delta**2 + self.A2 / delta + self.A3
		return np.where(r <= delta, bound, 0.0)

	def lp_bound(self, p: float, delta: float) -> float:
		"""Intégration de la borne ponctuelle en coordonnées polaires."""
		inv = 1.0 / p
		head = self.A1 * (p + 2) ** -inv + self.A2 * 2**-inv
		return (2 * math.pi) ** inv * (head * delta ** (2 * inv - 1) + self.A3 * 2**-inv * delta ** (2 * inv))

	def to_dict(self) -> dict:
		return {
			"C1": self.C1,
			"C2": self.C2,
			"D1": self.D1,
			"D2": self.D2,
			"D3": self.D3,
			"A1": self.A1,
			"A2": self.A2,
			"A3": self.A3,
		}

	def __repr__(self) -> str:
		return f"ConstantsLedger(A1={self.A1:.4g}, A2={self.A2:.4g}, A3={self.A3:.4g})"


class DecayRow:
	"""Ligne du tableau de décroissance pour un delta donné."""

	def __init__(self, delta: float, lp_norm: float, bound: float, s1_norm: float) -> None:
		self.delta = float(delta)
		self.lp_norm = float(lp_norm)
		self.bound = float(bound)
		self.s1_norm = float(s1_norm)

	def as_tuple(self) -> tuple[float, float, float, float]:
		return (self.delta, self.lp_norm, self.bound, self.s1_norm)

	def __repr__(self) -> str:
		return f"DecayRow(delta={self.delta!r}, lp={self.lp_norm:.4e}, s1={self.s1_norm:.4e})"


def _log_slopes(deltas: Sequence[float], values: Sequence[float]) -> List[float]:
	slopes = []
	for k in range(1, len(deltas)):
		a, b = values[k - 1], values[k]
		if a <= 0.0 or b <= 0.0:
			slopes.append(math.nan)
			continue
		slopes.append(math.log(b / a) / math.log(deltas[k] / deltas[k - 1]))
	return slopes


class DecayTable:
	"""
	Tableau (delta, ||D(tau_delta alpha)||_p, borne, ||tau_check_delta . X||_1).

	`truncated` indique que des niveaux demandés n'étaient pas résolus par
	la grille.
	"""

	COLUMNS = ("delta", "lp_norm", "bound", "s1_norm")

	def __init__(self, p: float, rows: Sequence[DecayRow], truncated: bool = False, requested: int | None = None) -> None:
		self._p = float(p)
		self._rows = tuple(rows)
		self._truncated = bool(truncated)
		self._requested = len(self._rows) if requested is None else int(requested)

	@property
	def p(self) -> float:
		return self._p

	@property
	def rows(self) -> tuple[DecayRow, ...]:
		return self._rows

	@property
	def truncated(self) -> bool:
		return self._truncated

	@property
	def requested(self) -> int:
		return self._requested

	@property
	def deltas(self) -> List[float]:
		return [r.delta for r in self._rows]

	def lp_slopes(self) -> List[float]:
		return _log_slopes(self.deltas, [r.lp_norm for r in self._rows])

	def bound_slopes(self) -> List[float]:
		return _log_slopes(self.deltas, [r.bound for r in self._rows])

	def s1_slopes(self) -> List[float]:
		return _log_slopes(self.deltas, [r.s1_norm for r in self._rows])

	def expected_slope(self) -> float:
		return 2.0 / self._p - 1.0

	def __len__(self) -> int:
		return len(self._rows)

	def __iter__(self):
		return iter(self._rows)

	def __repr__(self) -> str:
		flag = ", tronqué" if self._truncated else ""
		return f"DecayTable(p={self._p!r}, {len(self._rows)} niveaux{flag})"
