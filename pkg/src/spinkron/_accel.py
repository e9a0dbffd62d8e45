"""Selects between the numba-compiled kernels and the pure-numpy fallbacks.

Set ``SPINKRON_DISABLE_NUMBA=1`` in the environment before import to force the
numpy path. The numpy path is also used when numba cannot be imported.
"""

import os

_FALSE_VALUES = {"", "0", "false", "no", "off"}

DISABLE_NUMBA = os.environ.get("SPINKRON_DISABLE_NUMBA", "").strip().lower() not in _FALSE_VALUES

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLE_NUMBA


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise an identity decorator.

    The compiled variants are always defined so that tests and the benchmark
    can compare both paths in one process, whatever ``USE_NUMBA`` says.
    """
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(func):
        return func

    return wrap


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
