"""Selects the compiled enumeration kernel when available.

Set ``PATHSUM_PURE=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "numpy"
accumulate = _kernels_py.accumulate

if os.environ.get("PATHSUM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel
    except ImportError:
        pass
    else:
        accumulate = _ckernel.accumulate
        BACKEND = "compiled"

__all__ = ["BACKEND", "accumulate"]
