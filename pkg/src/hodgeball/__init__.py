"""Exact computations with polarized Hodge structures, Jacobian rings and ball-type period maps."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
