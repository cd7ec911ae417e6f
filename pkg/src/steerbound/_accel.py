"""Numba switch.

Hot kernels are written once as plain Python over numpy arrays and compiled
with :func:`jit` when numba is importable.  Setting ``STEERBOUND_DISABLE_NUMBA``
to ``1``/``true`` before import forces the pure-numpy paths.
"""

from __future__ import annotations

import os

DISABLE_ENV = "STEERBOUND_DISABLE_NUMBA"

try:
    import numba
    from numba import prange

    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # avoids probing the system TBB, which is often too old
        numba.config.THREADING_LAYER = "workqueue"
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    prange = range
    HAVE_NUMBA = False


def _disabled_by_env() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not _disabled_by_env()


def jit(func=None, **options):
    """``numba.njit(cache=True, **options)`` if available, identity otherwise.

    The undecorated function stays reachable as ``.py_func`` either way so
    benchmarks can time both.
    """

    def wrap(f):
        if not HAVE_NUMBA:
            f.py_func = f
            return f
        return numba.njit(cache=True, **options)(f)

    return wrap if func is None else wrap(func)


def accelerated(func):
    """Compile ``func`` only when the numba path is selected.

    Used for kernels that call other dispatch-selected kernels, so the
    fallback stays entirely in Python/numpy.
    """
    if not USE_NUMBA:
        func.py_func = func
        return func
    return numba.njit(cache=True)(func)


def set_threads(n: int | None) -> None:
    if n and HAVE_NUMBA:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
