"""Exact Temperley-Lieb and eight-vertex transfer operators and their polynomial integrability."""

__version__ = "0.1.0"
