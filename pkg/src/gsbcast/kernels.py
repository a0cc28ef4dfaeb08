"""Backend selection for the region kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``GSBCAST_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python reference kernels are used. Both expose the same
functions and accept the same arguments (contiguous float64 arrays).
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("GSBCAST_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        _impl = _ckernels
        BACKEND = "cython"

KIND_SCALED = _pykernels.KIND_SCALED
KIND_PARAMETRIC = _pykernels.KIND_PARAMETRIC
KIND_P2P = _pykernels.KIND_P2P


def backend_module(name=None):
    """Return the kernel module for ``name`` ("python", "cython") or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def as_array(values):
    return np.ascontiguousarray(values, dtype=np.float64)


def evaluate(kind, coef, d, tau, scale, inv_b):
    return _impl.evaluate(kind, coef, d, tau, scale, inv_b)


def bisect(kind, coef, d, tau, scale, inv_b, idx, lo, hi, budget, tol, abs_tol, rel_tol, max_iter):
    return _impl.bisect(kind, coef, d, tau, scale, inv_b, idx, lo, hi, budget, tol, abs_tol, rel_tol, max_iter)


def brackets(d, tau):
    return _impl.brackets(d, tau)
