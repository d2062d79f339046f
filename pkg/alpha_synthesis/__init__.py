"""Transformée alpha et synthèse spectrale sur grille auto-duale."""

__version__ = "0.1.0"
