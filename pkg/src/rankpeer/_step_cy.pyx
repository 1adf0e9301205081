# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver step kernels. Mirrors ``_step_py`` exactly; per-row
insertion sort is optimal because degrees stay small."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline void _gather_sorted(const double[::1] y,
                                const long long[:, ::1] peer_idx,
                                Py_ssize_t i,
                                double* buf,
                                Py_ssize_t* count) noexcept nogil:
    cdef Py_ssize_t dmax = peer_idx.shape[1]
    cdef Py_ssize_t k, j, m
    cdef double v
    cdef long long p
    m = 0
    for k in range(dmax):
        p = peer_idx[i, k]
        if p < 0:
            break
        v = y[p]
        j = m
        while j > 0 and buf[j - 1] > v:
            buf[j] = buf[j - 1]
            j -= 1
        buf[j] = v
        m += 1
    count[0] = m


def sorted_peer_matrix(const double[::1] y, const long long[:, ::1] peer_idx):
    """Row i holds node i's peer outcomes in ascending order, zero padded."""
    cdef Py_ssize_t n = peer_idx.shape[0]
    cdef Py_ssize_t dmax = peer_idx.shape[1]
    out_arr = np.zeros((n, dmax), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double buf[64]
    cdef Py_ssize_t i, k, m
    if dmax > 64:
        raise ValueError("degree above compiled kernel limit of 64")
    with nogil:
        for i in range(n):
            _gather_sorted(y, peer_idx, i, buf, &m)
            for k in range(m):
                out[i, k] = buf[k]
    return out_arr


def peer_step(const double[::1] y,
              const long long[:, ::1] peer_idx,
              const double[:, ::1] beta_rows,
              const double[::1] intrinsic):
    """One application of the equilibrium map."""
    cdef Py_ssize_t n = peer_idx.shape[0]
    cdef Py_ssize_t dmax = peer_idx.shape[1]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double buf[64]
    cdef double acc
    cdef Py_ssize_t i, k, m
    if dmax > 64:
        raise ValueError("degree above compiled kernel limit of 64")
    with nogil:
        for i in range(n):
            _gather_sorted(y, peer_idx, i, buf, &m)
            acc = 0.0
            for k in range(m):
                acc += buf[k] * beta_rows[i, k]
            out[i] = acc + intrinsic[i]
    return out_arr
