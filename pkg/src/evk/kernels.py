"""Kernel dispatch: compiled Cython core if built, numpy fallback otherwise.

Set ``EVK_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

try:
    if os.environ.get("EVK_PURE_PYTHON"):
        raise ImportError("fallback forced by EVK_PURE_PYTHON")
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _fallback
    BACKEND = "python"

enumerate_solutions = _impl.enumerate_solutions
apply_terms = _impl.apply_terms
