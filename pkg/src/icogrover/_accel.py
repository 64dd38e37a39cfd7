"""Optional numba acceleration.

Set ``ICOGROVER_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is installed.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLED_BY_ENV = os.environ.get("ICOGROVER_DISABLE_NUMBA", "").strip().lower() not in _FALSY

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


USE_NUMBA = HAS_NUMBA and not DISABLED_BY_ENV
