"""Conformal logarithmic Laplacian on spheres and its flat counterpart."""

__version__ = "0.1.0"
