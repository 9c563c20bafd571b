"""Exact curvature-operator analysis for pseudo-Riemannian metrics and algebraic curvature models."""

__version__ = "0.1.0"
