"""Kernel backend selection.

The compiled extension is used when it imports cleanly; set
``HODGEBALL_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("HODGEBALL_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import echelon, monomials_of_degree, series_mul, standard_monomials

    BACKEND = "python"
else:
    try:
        from ._kernels import echelon, monomials_of_degree, series_mul, standard_monomials

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import echelon, monomials_of_degree, series_mul, standard_monomials

        BACKEND = "python"

__all__ = ["BACKEND", "echelon", "monomials_of_degree", "series_mul", "standard_monomials"]
