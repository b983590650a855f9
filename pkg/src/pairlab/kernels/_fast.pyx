# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense difference counting, sorted-diff energy,
oscillatory partial sums. Exact integer results; signatures match
_numpy_backend."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sin

cnp.import_array()


def diff_counts_dense(values, long long span):
    cdef cnp.int64_t[::1] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = vals.shape[0]
    out = np.zeros(span + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                counts[vals[j] - vals[i]] += 1
    counts[0] = n
    return out


def energy_from_diffs(values, long long pairs_cap=350_000_000):
    cdef cnp.int64_t[::1] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = vals.shape[0]
    cdef long long pairs = <long long> n * (n - 1) // 2
    if pairs > pairs_cap:
        raise MemoryError(f"{pairs} difference pairs exceed cap {pairs_cap}")
    if n < 2:
        return n * n
    cdef long long span = vals[n - 1] - vals[0]
    if span < 2**32:
        return _energy_u32(vals, pairs)
    return _energy_i64(vals, pairs)


# buffers are sorted through numpy (SIMD sorts beat std::sort on ints);
# the fill and the run-length pass stay in C

cdef object _energy_u32(cnp.int64_t[::1] vals, long long pairs):
    cdef Py_ssize_t n = vals.shape[0]
    buf_arr = np.empty(pairs, dtype=np.uint32)
    cdef cnp.uint32_t[::1] buf = buf_arr
    cdef Py_ssize_t i, j
    cdef long long pos = 0, run = 1, acc = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                buf[pos] = <cnp.uint32_t> (vals[j] - vals[i])
                pos += 1
    buf_arr.sort()
    with nogil:
        for pos in range(1, pairs):
            if buf[pos] == buf[pos - 1]:
                run += 1
            else:
                acc += run * run
                run = 1
        acc += run * run
    return <object> (n * n) + 2 * <object> acc


cdef object _energy_i64(cnp.int64_t[::1] vals, long long pairs):
    cdef Py_ssize_t n = vals.shape[0]
    buf_arr = np.empty(pairs, dtype=np.int64)
    cdef cnp.int64_t[::1] buf = buf_arr
    cdef Py_ssize_t i, j
    cdef long long pos = 0, run = 1, acc = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                buf[pos] = vals[j] - vals[i]
                pos += 1
    buf_arr.sort()
    with nogil:
        for pos in range(1, pairs):
            if buf[pos] == buf[pos - 1]:
                run += 1
            else:
                acc += run * run
                run = 1
        acc += run * run
    return <object> (n * n) + 2 * <object> acc


def abs_cc_partial(double theta, long long ap, long long bp, long long h0, long long h1):
    cdef double total = 0.0, h
    cdef long long i
    with nogil:
        for i in range(h0, h1):
            h = <double> i
            total += fabs(sin(theta * ap * h) * sin(theta * bp * h)) / (h * h)
    return total
