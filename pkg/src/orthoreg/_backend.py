"""Backend selection for the hot numeric kernels.

The kernels in :mod:`orthoreg._kernels` are plain numpy code that numba can
compile in nopython mode.  Which path runs is chosen once, at import time,
from the ``ORTHOREG_BACKEND`` environment variable:

- ``auto`` (default): compile with numba when it is importable, otherwise
  fall back to the pure-numpy path;
- ``numba``: insist on compilation, raise if numba is unavailable;
- ``numpy``: force the uncompiled pure-numpy path.

``benchmarks/bench_backends.py`` times the same kernels under both settings.
"""

import os

_CHOICE = os.environ.get("ORTHOREG_BACKEND", "auto").strip().lower() or "auto"

if _CHOICE == "auto":
    try:
        import numba
        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
elif _CHOICE == "numba":
    import numba
    NUMBA_ENABLED = True
elif _CHOICE in ("numpy", "python"):
    NUMBA_ENABLED = False
else:
    raise RuntimeError(
        "unrecognized ORTHOREG_BACKEND=%r (expected 'auto', 'numba' or 'numpy')"
        % _CHOICE
    )

BACKEND_NAME = "numba" if NUMBA_ENABLED else "numpy"


def jit(func):
    """Compile ``func`` with numba when the numba backend is active."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    return func
