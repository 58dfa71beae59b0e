"""Exact Hecke algebras with character twists, canonical bases and cells."""

from heckecells.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
