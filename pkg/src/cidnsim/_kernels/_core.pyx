# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics and float operation order match _pure.py."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def walk_chunk(
    cnp.ndarray[cnp.float64_t, ndim=2] u,
    cnp.ndarray[cnp.float64_t, ndim=1] state,
    double p_zero,
    double inc_zero,
    double inc_one,
    double log_a,
    double log_b,
):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t chunk = u.shape[1]
    cdef cnp.ndarray[cnp.int8_t, ndim=1] status = np.zeros(n, dtype=np.int8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] steps = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] new_state = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double c, s, base
    for i in range(n):
        base = state[i]
        c = 0.0
        s = base
        for j in range(chunk):
            # accumulate increments separately, then add the base, so the
            # rounding order equals base + cumsum(incs) in the pure backend
            if u[i, j] < p_zero:
                c = c + inc_zero
            else:
                c = c + inc_one
            s = base + c
            if s >= log_b:
                status[i] = 2
                steps[i] = j + 1
                break
            if s <= log_a:
                status[i] = 1
                steps[i] = j + 1
                break
        else:
            status[i] = 0
            steps[i] = chunk
        new_state[i] = s
    return status, steps, new_state


def consult_paths(
    cnp.ndarray[cnp.uint8_t, ndim=2] bits,
    cnp.ndarray[cnp.float64_t, ndim=2] inc_pos,
    cnp.ndarray[cnp.float64_t, ndim=2] inc_neg,
    double log_a,
    double log_b,
    double z_star,
):
    cdef Py_ssize_t n = bits.shape[0]
    cdef Py_ssize_t width = bits.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] decision = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] n_used = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef double s
    cdef bint hit
    if width == 0:
        if 0.0 > z_star:
            decision[:] = 1
        return decision, n_used
    for i in range(n):
        s = 0.0
        hit = False
        for j in range(width):
            if bits[i, j] != 0:
                s = s + inc_pos[i, j]
            else:
                s = s + inc_neg[i, j]
            if s >= log_b:
                decision[i] = 1
                n_used[i] = j + 1
                hit = True
                break
            if s <= log_a:
                decision[i] = 0
                n_used[i] = j + 1
                hit = True
                break
        if not hit:
            n_used[i] = width
            decision[i] = 1 if s > z_star else 0
    return decision, n_used
