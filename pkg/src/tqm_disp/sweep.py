"""Order-preserving parallel map for parameter sweeps.

Every sweep point is an independent pure computation, so results never depend
on completion order; they are returned in input order.
"""

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["THREADS_ENV", "thread_count", "sweep"]

THREADS_ENV = "TQM_DISP_THREADS"


def thread_count(requested=None):
    """Worker count: ``requested`` capped by ``$TQM_DISP_THREADS`` if set.

    Raises
    ------
    ValueError
        If the environment variable is not a positive integer.
    """
    n = requested if requested is not None else (os.cpu_count() or 1)
    raw = os.environ.get(THREADS_ENV)
    if raw is not None and raw.strip():
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
        if cap < 1:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
        n = min(n, cap)
    return max(1, int(n))


def sweep(fn, points, threads=None):
    """``[fn(p) for p in points]``, possibly evaluated on a thread pool."""
    points = list(points)
    n = min(thread_count(threads), max(1, len(points)))
    if n == 1:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, points))
