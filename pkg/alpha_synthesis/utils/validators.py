"""
Exceptions et fonctions de validation du paquet.

Toutes les erreurs héritent de `AlphaSynthesisError` pour que le CLI puisse
les attraper en un seul endroit et les traduire en code de sortie.
"""
from __future__ import annotations

import math

import numpy as np


# Exceptions personnalisées

class AlphaSynthesisError(Exception):
    """Erreur de base du paquet"""


class InvalidArgumentError(AlphaSynthesisError, ValueError):
    """Argument invalide (taille de grille, exposant, delta...)"""


class UnsupportedGridError(AlphaSynthesisError):
    """La grille n'est pas auto-duale"""


class GridMismatchError(AlphaSynthesisError):
    """Deux objets ne vivent pas sur la même grille"""


class BudgetExceededError(AlphaSynthesisError):
    """Grille trop grande pour l'oracle par quadrature"""


class NCFKFormatError(AlphaSynthesisError):
    """Fichier NCFK illisible ou corrompu"""


class NonZeroTraceError(AlphaSynthesisError):
    """L'opérateur n'est pas de trace nulle"""

    def __init__(self, trace: complex, tolerance: float) -> None:
        super().__init__(
            f"Trace non nulle : |tr(X)| = {abs(trace):.3e} > {tolerance:.3e}"
        )
        self.trace = trace
        self.tolerance = tolerance


class ResolutionExceededError(AlphaSynthesisError):
    """La résolution de la grille ne suffit pas

    `best_norm` et `report` sont renseignés quand une recherche (échelle de
    delta) a été interrompue, pour que l'appelant puisse publier le meilleur
    résultat atteint.
    """

    def __init__(self, message: str, best_norm: float | None = None, report=None) -> None:
        super().__init__(message)
        self.best_norm = best_norm
        self.report = report


# Fonctions de validation

def validate_grid_size(n: int) -> None:
    """
    Vérifie que le nombre de points est un entier pair >= 8
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidArgumentError(f"n doit être un entier, reçu {n!r}")
    if n < 8 or n % 2:
        raise InvalidArgumentError(f"n doit être pair et >= 8, reçu {n}")


def validate_spacing(h: float) -> None:
    if not (math.isfinite(h) and h > 0):
        raise InvalidArgumentError(f"le pas h doit être > 0, reçu {h}")


def validate_sign(sign: int) -> None:
    if sign not in (-1, 1):
        raise InvalidArgumentError(f"le signe doit valoir -1 ou +1, reçu {sign}")


def validate_exponent(p: float) -> float:
    """
    Vérifie un exposant de Schatten p dans [1, inf] et le renvoie en float
    """
    p = float(p)
    if math.isnan(p) or p < 1:
        raise InvalidArgumentError(f"l'exposant doit vérifier p >= 1, reçu {p}")
    return p


def conjugate_exponent(p: float) -> float:
    """Exposant conjugué p' avec 1/p + 1/p' = 1."""
    p = validate_exponent(p)
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def validate_delta(delta: float) -> None:
    if not (0 < delta <= 1):
        raise InvalidArgumentError(f"delta doit être dans ]0, 1], reçu {delta}")


def validate_epsilon(eps: float) -> None:
    if not (math.isfinite(eps) and eps > 0):
        raise InvalidArgumentError(f"epsilon doit être > 0, reçu {eps}")


def validate_trace_zero(trace: complex, s1_norm: float, rel_tol: float) -> None:
    """
    Vérifie |tr(X)| <= rel_tol * ||X||_{S1}
    """
    tolerance = rel_tol * s1_norm
    if abs(trace) > tolerance:
        raise NonZeroTraceError(trace, tolerance)
