"""Deterministic map helper honoring the VALGEBRA_THREADS cap.

Results are collected in input order and every worker is a pure function of
its item, so the output is bit-identical to sequential evaluation.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    raw = os.environ.get("VALGEBRA_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def map_deterministic(fn, items, threads: int | None = None) -> list:
    items = list(items)
    n = thread_cap() if threads is None else max(1, threads)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
