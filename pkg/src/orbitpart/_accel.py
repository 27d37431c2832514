"""Numba switch.

Set ``ORBITPART_DISABLE_NUMBA=1`` to run every kernel as plain numpy/Python.
The flag is read once at import time.
"""
import os

_flag = os.environ.get("ORBITPART_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def maybe_njit(fn):
    if HAVE_NUMBA:
        return _njit(cache=True, nogil=True)(fn)
    return fn


def backend():
    return "numba" if HAVE_NUMBA else "numpy"
