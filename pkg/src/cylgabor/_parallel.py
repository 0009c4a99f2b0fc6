"""Thread-capped map used for grid evaluation.

The cap is read from the CYLGABOR_THREADS environment variable (default 1).
Results are always returned in input order, so output is deterministic.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def max_workers() -> int:
    try:
        n = int(os.environ.get("CYLGABOR_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def parallel_map(fn, items):
    n = max_workers()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
