"""Optional process parallelism, capped by ``ARC_OP_THREADS``."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def thread_cap() -> int:
    raw = os.environ.get("ARC_OP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """``list(map(fn, items))``, spread over worker processes when allowed."""
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
