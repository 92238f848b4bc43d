# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the O(n^2) win-probability recursion and path rollout.

The numpy fallback in ``lastsuccess._fallback`` implements the same three
functions; ``lastsuccess._kernel`` picks whichever imports.
"""

import numpy as np


cdef inline Py_ssize_t _cutoff(Py_ssize_t t, Py_ssize_t n) nogil:
    cdef Py_ssize_t q
    if t == n:
        return n
    q = n - t + 1
    return (t + q - 1) // q - 1


cdef double _dp_single(Py_ssize_t n, double p, double* u) nogil:
    """Rolling-row recursion; ``u`` is a caller-provided buffer of n+1 doubles."""
    cdef double q = 1.0 - p
    cdef double total = 0.0
    cdef double acc
    cdef Py_ssize_t t, k, b
    for k in range(n + 1):
        u[k] = 0.0
    u[0] = 1.0
    for t in range(1, n + 1):
        b = _cutoff(t, n)
        total *= q
        if b >= 1:
            acc = 0.0
            for k in range(b):
                acc += u[k]
            total += p * acc
        # in-place update, descending k so u[k-1] is still row t-1
        k = t
        while k > b:
            u[k] = q * u[k] + p * u[k - 1]
            k -= 1
        while k >= 0:
            u[k] = q * u[k]
            k -= 1
    return total


def dp_win_prob(Py_ssize_t n, double p):
    """Single-point W_n(p)."""
    buf = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] u = buf
    cdef double out
    with nogil:
        out = _dp_single(n, p, &u[0])
    return out


def dp_win_prob_grid(Py_ssize_t n, ps):
    """W_n at every p of a 1-D float64 grid."""
    ps_arr = np.ascontiguousarray(ps, dtype=np.float64)
    if ps_arr.ndim != 1:
        raise ValueError("probability grid must be one-dimensional")
    cdef Py_ssize_t g = ps_arr.shape[0]
    out_arr = np.empty(g, dtype=np.float64)
    if g == 0:
        return out_arr
    buf = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] grid = ps_arr
    cdef double[::1] out = out_arr
    cdef double[::1] u = buf
    cdef Py_ssize_t i
    with nogil:
        for i in range(g):
            out[i] = _dp_single(n, grid[i], &u[0])
    return out_arr


def plugin_stop_times(paths):
    """Stop time of the plug-in rule per path row; 0 means never stops."""
    paths_arr = np.ascontiguousarray(paths, dtype=np.uint8)
    if paths_arr.ndim != 2:
        raise ValueError("paths must be a 2-D matrix")
    cdef Py_ssize_t m = paths_arr.shape[0]
    cdef Py_ssize_t n = paths_arr.shape[1]
    if n < 2:
        raise ValueError("horizon must be >= 2")
    out_arr = np.zeros(m, dtype=np.int64)
    cdef const unsigned char[:, ::1] x = paths_arr
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i, t, s
    with nogil:
        for i in range(m):
            s = 0
            for t in range(1, n + 1):
                if x[i, t - 1]:
                    s += 1
                    if s <= _cutoff(t, n):
                        out[i] = t
                        break
    return out_arr
