"""Backend selection for the array kernels.

The hot GF(p) kernels ship in two functionally identical implementations:
a numba @njit version and a pure-numpy fallback.  Setting the environment
variable HEIS8_CERTIFY_NO_NUMBA to anything other than "" or "0" forces the
numpy path (and skips importing numba entirely); the numpy path is also used
automatically when numba is not installed.  Both paths are required to return
bit-identical results and are tested against each other.
"""
import os

ENV_FLAG = "HEIS8_CERTIFY_NO_NUMBA"

_disabled = os.environ.get(ENV_FLAG, "").strip() not in ("", "0")

njit = None
HAVE_NUMBA = False
if not _disabled:
    try:
        from numba import njit  # noqa: F401
        HAVE_NUMBA = True
    except ImportError:
        njit = None

USE_NUMBA = HAVE_NUMBA and not _disabled


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
