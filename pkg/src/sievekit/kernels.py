"""Backend selection for the segment kernels.

The compiled extension is used when it imports; otherwise the NumPy
fallback. Setting ``SIEVEKIT_PURE_PYTHON=1`` forces the fallback.
"""

import os

from sievekit import _pykernels

__all__ = ["BACKEND", "sieve_segment", "factor_segment", "load_backend"]


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from sievekit import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


if os.environ.get("SIEVEKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl, BACKEND = _pykernels, "python"
else:
    try:
        _impl, BACKEND = load_backend("cython"), "cython"
    except ImportError:
        _impl, BACKEND = _pykernels, "python"

sieve_segment = _impl.sieve_segment
factor_segment = _impl.factor_segment
