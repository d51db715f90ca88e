"""Kernel selection: compiled Cython core when built, pure Python otherwise.

Set ``SPIMPLICIT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("SPIMPLICIT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

bareiss_echelon = _impl.bareiss_echelon
bareiss_rref = _impl.bareiss_rref
