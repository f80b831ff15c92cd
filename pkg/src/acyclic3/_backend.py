"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``ACYCLIC3_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ACYCLIC3_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND: str = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
