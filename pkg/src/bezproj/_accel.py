"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback
in ``_kernels_py`` is used otherwise. Setting the environment variable
``BEZPROJ_PURE_PYTHON=1`` forces the fallback, which is handy for
benchmarking the two backends against each other and for ruling the
extension in or out when debugging.
"""

import os

from . import _kernels_py

if os.environ.get("BEZPROJ_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore

        COMPILED = True
    except ImportError:
        kernels = _kernels_py
        COMPILED = False

bernstein_matrix = kernels.bernstein_matrix
bspline_basis_matrix = kernels.bspline_basis_matrix
