"""Select between numba-compiled kernels and the pure numpy fallback.

Set ``ANTIMAGIC_DISABLE_NUMBA=1`` to force the fallback path.
"""
import os

DISABLED = os.environ.get("ANTIMAGIC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
