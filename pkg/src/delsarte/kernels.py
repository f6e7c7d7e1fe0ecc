"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``DELSARTE_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("DELSARTE_PURE_PYTHON") != "1":
    try:
        from ._ckernels import max_clique, triple_row, weighted_row_sum  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import max_clique, triple_row, weighted_row_sum  # noqa: F401

from . import _pykernels as python_kernels  # noqa: E402,F401

__all__ = ["BACKEND", "max_clique", "triple_row", "weighted_row_sum", "python_kernels"]
