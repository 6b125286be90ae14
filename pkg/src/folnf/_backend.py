"""Kernel selection: compiled ``_kernels_c`` when importable, else pure Python.

Set ``FOLNF_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the kernel equivalence tests).
"""
import os

from . import _kernels_py

if os.environ.get("FOLNF_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels_c as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = "compiled" if kernels is not _kernels_py else "python"
