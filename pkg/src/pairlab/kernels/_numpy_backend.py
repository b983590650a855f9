"""Numpy implementations of the hot kernels (fallback backend).

Same signatures as the compiled backend: exact integer results from
chunked vectorized passes. Chunk sizes keep peak scratch memory modest.
"""
from __future__ import annotations

import numpy as np

_DIFF_CHUNK_CELLS = 8_000_000       # cells per outer-difference block
_RUN_CHUNK = 8_000_000              # elements per run-length block


def diff_counts_dense(values: np.ndarray, span: int) -> np.ndarray:
    """counts[k] = #{(i,j): values[i] - values[j] = k} for k in 0..span.

    values: strictly increasing int64. counts[0] is set to len(values).
    """
    vals = np.ascontiguousarray(values, dtype=np.int64)
    n = len(vals)
    counts = np.zeros(span + 1, dtype=np.int64)
    counts[0] = n
    rows = max(1, _DIFF_CHUNK_CELLS // max(n, 1))
    for lo in range(0, n, rows):
        hi = min(lo + rows, n)
        d = vals[lo:hi, None] - vals[None, :]
        d = d[d > 0]
        if len(d):
            counts += np.bincount(d, minlength=span + 1).astype(np.int64)
    return counts


def energy_from_diffs(values: np.ndarray, pairs_cap: int = 350_000_000) -> int:
    """Additive energy via the sorted buffer of all positive differences.

    Handles spans too large for a dense count array. Exact; the buffer is
    uint32 when the span allows it.
    """
    vals = np.ascontiguousarray(values, dtype=np.int64)
    n = len(vals)
    pairs = n * (n - 1) // 2
    if pairs > pairs_cap:
        raise MemoryError(f"{pairs} difference pairs exceed cap {pairs_cap}")
    span = int(vals[-1] - vals[0]) if n else 0
    dtype = np.uint32 if span < 2**32 else np.int64
    buf = np.empty(pairs, dtype=dtype)
    pos = 0
    for i in range(n - 1):
        m = n - 1 - i
        np.subtract(vals[i + 1:], vals[i], out=buf[pos:pos + m], casting="unsafe")
        pos += m
    buf.sort()
    return n * n + 2 * _sum_sq_runs(buf)


def _sum_sq_runs(sorted_buf: np.ndarray) -> int:
    """Sum of squared run lengths of a sorted array, chunked."""
    total = 0
    carry = 0          # length of the run continuing from the previous chunk
    prev_val = None
    m = len(sorted_buf)
    for lo in range(0, m, _RUN_CHUNK):
        chunk = sorted_buf[lo:lo + _RUN_CHUNK]
        bounds = np.flatnonzero(chunk[1:] != chunk[:-1])
        starts = np.concatenate(([0], bounds + 1))
        ends = np.concatenate((bounds + 1, [len(chunk)]))
        lens = ends - starts
        if prev_val is not None and chunk[0] == prev_val:
            lens[0] += carry
        else:
            total += carry * carry
        if len(lens) > 1:
            total += int(np.dot(lens[:-1].astype(np.int64), lens[:-1].astype(np.int64)))
        carry = int(lens[-1])
        prev_val = chunk[-1]
    total += carry * carry
    return total


def abs_cc_partial(theta: float, ap: int, bp: int, h0: int, h1: int) -> float:
    """sum over h in [h0, h1) of |sin(theta*ap*h) * sin(theta*bp*h)| / h**2."""
    total = 0.0
    step = 4_000_000
    for lo in range(h0, h1, step):
        h = np.arange(lo, min(lo + step, h1), dtype=np.float64)
        total += float(np.sum(np.abs(np.sin(theta * ap * h) * np.sin(theta * bp * h)) / (h * h)))
    return total
