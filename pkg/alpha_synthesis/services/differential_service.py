"""
Opérateurs différentiels spectraux sur le plan.

D = (d/dx - 2 pi i y)^2 + (d/dy)^2 = Delta - 4 pi i y d/dx - 4 pi^2 y^2
"""
from __future__ import annotations

import math

import numpy as np

from alpha_synthesis.models import PlaneFunction
from alpha_synthesis.services.grid_service import spectral_derivative
from alpha_synthesis.utils.validators import InvalidArgumentError


def partial_x(u: PlaneFunction, order: int = 1) -> PlaneFunction:
	return PlaneFunction(u.grid, spectral_derivative(u.values, u.grid.xgrid.h, axis=0, order=order))


def partial_y(u: PlaneFunction, order: int = 1) -> PlaneFunction:
	return PlaneFunction(u.grid, spectral_derivative(u.values, u.grid.ygrid.h, axis=1, order=order))


def gradient_magnitude(u: PlaneFunction) -> np.ndarray:
	return np.hypot(np.abs(partial_x(u).values), np.abs(partial_y(u).values))


def laplacian(u: PlaneFunction) -> PlaneFunction:
	return partial_x(u, 2) + partial_y(u, 2)


def _y_mesh(u: PlaneFunction) -> np.ndarray:
	return u.grid.mesh()[1]


def twisted_x(u: PlaneFunction) -> PlaneFunction:
	"""(d/dx - 2 pi i y) u."""
	return partial_x(u) - u * (2j * math.pi * _y_mesh(u))


def d_operator(u: PlaneFunction, form: str = "factored") -> PlaneFunction:
	"""
	Opérateur D sous l'une de ses deux formes :
	'factored' : (d/dx - 2 pi i y)^2 + (d/dy)^2
	'expanded' : Delta - 4 pi i y d/dx - 4 pi^2 y^2
	"""
	if form == "factored":
		return twisted_x(twisted_x(u)) + partial_y(u, 2)
	if form == "expanded":
		y = _y_mesh(u)
		return laplacian(u) - partial_x(u) * (4j * math.pi * y) - u * (4 * math.pi**2 * y**2)
	raise InvalidArgumentError(f"forme de D inconnue : {form!r}")
