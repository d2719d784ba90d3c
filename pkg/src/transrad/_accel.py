"""Numba switch.

Set ``TRANSRAD_DISABLE_NUMBA=1`` to force the pure NumPy kernels.  The flag is
read once, at import time.
"""
import os

ENV_FLAG = "TRANSRAD_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get(ENV_FLAG, "").strip().lower() not in (
    "1", "true", "yes", "on")


def jit(fn):
    """Compile ``fn`` in nopython mode, or return None when numba is missing."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
