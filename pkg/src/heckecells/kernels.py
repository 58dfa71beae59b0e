"""Backend selection for the dense polynomial kernels.

The compiled extension is used when it imports; setting the environment
variable ``HECKECELLS_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from heckecells import _pykernel

if os.environ.get("HECKECELLS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernel
else:
    try:
        from heckecells import _ckernel as _impl
    except ImportError:  # extension not built
        _impl = _pykernel

BACKEND = _impl.BACKEND
mul = _impl.mul
add = _impl.add
divexact = _impl.divexact
trim = _pykernel.trim

__all__ = ["BACKEND", "mul", "add", "divexact", "trim"]
