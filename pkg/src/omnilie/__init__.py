"""Exact computations with omni-Lie algebroids, their Dirac structures and
projective Lie algebroids, over the rationals and polynomial coefficients."""

from .report import VERSION as __version__

__all__ = ["__version__"]
