"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python kernels.
Set DEGRES_BACKEND=python (or =cython) to force a choice; forcing cython
when the extension is missing raises immediately rather than silently
degrading.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("DEGRES_BACKEND", "auto").lower()

if _requested not in ("auto", "cython", "python"):
    raise RuntimeError(f"DEGRES_BACKEND must be auto, cython or python, got {_requested!r}")

if _requested == "python":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as _compiled

        kernels = _compiled
    except ImportError:
        if _requested == "cython":
            raise RuntimeError("DEGRES_BACKEND=cython but the compiled extension is not built")
        kernels = _kernels_py

BACKEND_NAME: str = kernels.BACKEND_NAME
