"""
Module models.report
Contient la classe `Report` : résultat structuré d'une vérification.

Un rapport regroupe des grandeurs mesurées et des contrôles (lhs, rhs,
tolérance). Le verdict global est la conjonction des contrôles.
"""
from __future__ import annotations

import math
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional


def _json_number(value: float) -> float | str | None:
	"""Les flottants non finis sont écrits comme chaînes pour rester en JSON strict."""
	if value is None:
		return None
	value = float(value)
	if math.isfinite(value):
		return value
	return repr(value)


def _from_json_number(value) -> float | None:
	if value is None:
		return None
	return float(value)


class Check:
	"""Contrôle élémentaire : lhs comparé à rhs avec une tolérance."""

	def __init__(self, name: str, lhs: float, rhs: float, tolerance: float, passed: bool) -> None:
		self.name = name
		self.lhs = float(lhs)
		self.rhs = float(rhs)
		self.tolerance = float(tolerance)
		self.passed = bool(passed)

	def to_dict(self) -> Dict[str, Any]:
		return {
			"name": self.name,
			"lhs": _json_number(self.lhs),
			"rhs": _json_number(self.rhs),
			"tolerance": _json_number(self.tolerance),
			"pass": self.passed,
		}

	@classmethod
	def from_dict(cls, data: Dict[str, Any]) -> Check:
		return cls(
			data["name"],
			_from_json_number(data["lhs"]),
			_from_json_number(data["rhs"]),
			_from_json_number(data["tolerance"]),
			data["pass"],
		)

	def __repr__(self) -> str:
		status = "ok" if self.passed else "ÉCHEC"
		return f"Check({self.name}: {self.lhs:.3e} vs {self.rhs:.3e} [{status}])"


class Report:
	"""
	Rapport de vérification.

	Attributs :
	- suite : nom de la suite
	- grid : dict {n, h}
	- inputs : descripteurs de provenance (graine, construction)
	- quantities : liste ordonnée (nom, valeur)
	- checks : liste de `Check`
	- tau_hash : empreinte de la définition de la bosse tau
	"""

	def __init__(
		self,
		suite: str,
		grid: Optional[Dict[str, Any]] = None,
		inputs: Optional[Dict[str, Any]] = None,
		tau_hash: str = "",
	) -> None:
		self.suite = suite
		self.grid = dict(grid or {})
		self.inputs = dict(inputs or {})
		self.quantities: List[tuple[str, Any]] = []
		self.checks: List[Check] = []
		self.tau_hash = tau_hash
		self.created_at = datetime.now(timezone.utc).isoformat()

	@property
	def passed(self) -> bool:
		return all(c.passed for c in self.checks)

	def add_quantity(self, name: str, value: Any) -> None:
		self.quantities.append((name, value))

	def quantity(self, name: str) -> Any:
		for key, value in self.quantities:
			if key == name:
				return value
		raise KeyError(name)

	def check_le(self, name: str, lhs: float, rhs: float, tolerance: float = 0.0) -> Check:
		"""Contrôle lhs <= rhs + tolerance."""
		check = Check(name, lhs, rhs, tolerance, lhs <= rhs + tolerance)
		self.checks.append(check)
		return check

	def check_close(self, name: str, lhs: float, rhs: float, tolerance: float) -> Check:
		"""Contrôle |lhs - rhs| <= tolerance."""
		check = Check(name, lhs, rhs, tolerance, abs(lhs - rhs) <= tolerance)
		self.checks.append(check)
		return check

	def check_true(self, name: str, condition: bool, value: float = 0.0) -> Check:
		check = Check(name, value, value, 0.0, condition)
		self.checks.append(check)
		return check

	def merge(self, other: Report, prefix: str = "") -> None:
		"""Ajoute les grandeurs et contrôles d'un sous-rapport."""
		for name, value in other.quantities:
			self.quantities.append((prefix + name, value))
		for c in other.checks:
			self.checks.append(Check(prefix + c.name, c.lhs, c.rhs, c.tolerance, c.passed))

	def failures(self) -> List[Check]:
		return [c for c in self.checks if not c.passed]

	def to_dict(self) -> Dict[str, Any]:
		return {
			"suite": self.suite,
			"grid": self.grid,
			"inputs": self.inputs,
			"quantities": [
				{"name": k, "value": _json_number(v) if isinstance(v, float) else v}
				for k, v in self.quantities
			],
			"checks": [c.to_dict() for c in self.checks],
			"tau_hash": self.tau_hash,
			"pass": self.passed,
			"created_at": self.created_at,
		}

	@classmethod
	def from_dict(cls, data: Dict[str, Any]) -> Report:
		report = cls(data["suite"], data.get("grid"), data.get("inputs"), data.get("tau_hash", ""))
		for q in data.get("quantities", []):
			value = q["value"]
			if isinstance(value, str) and value in ("nan", "inf", "-inf"):
				value = float(value)
			report.quantities.append((q["name"], value))
		report.checks = [Check.from_dict(c) for c in data.get("checks", [])]
		report.created_at = data.get("created_at", report.created_at)
		return report

	def __repr__(self) -> str:
		status = "ok" if self.passed else f"{len(self.failures())} échec(s)"
		return f"Report({self.suite}, {len(self.checks)} contrôles, {status})"
