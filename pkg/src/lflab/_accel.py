"""Backend switch for the hot loops.

The kernels in :mod:`lflab.kernels` are compiled with numba when it is
importable.  Setting the environment variable ``LFLAB_BACKEND=numpy`` before
import forces the pure-numpy / interpreted path instead; both paths produce
identical results.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

BACKEND = os.environ.get("LFLAB_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"LFLAB_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

HAVE_NUMBA = numba is not None
USE_NUMBA = BACKEND == "numba" and HAVE_NUMBA


def compile_kernel(fn):
    """Return the numba-compiled version of ``fn`` or None without numba."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True, nogil=True)(fn)
