"""Deterministic bounded parallel map.

Work items carry their index; results are collected back in index order,
so output is identical for every thread count (the RNG contract already
makes the work itself order-independent).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("PAIRLAB_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
