"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the NumPy fallback
is used. Setting ``SPINSTAT_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
su2_ordered_product = _pykernels.su2_ordered_product
central_difference = _pykernels.central_difference

if os.environ.get("SPINSTAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ext import ckernels as _ck
    except ImportError:  # extension not built
        _ck = None
    if _ck is not None:
        BACKEND = "cython"
        su2_ordered_product = _ck.su2_ordered_product
        central_difference = _ck.central_difference


def available_backends() -> dict:
    out = {"python": _pykernels}
    try:
        from ._ext import ckernels
    except ImportError:
        pass
    else:
        out["cython"] = ckernels
    return out
