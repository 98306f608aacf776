"""Exact computations with Hopf q-braces, braid solutions on coalgebras and Hopf skew-braces."""

from .field import FieldSpec

__version__ = "0.1.0"

__all__ = ["FieldSpec", "__version__"]
