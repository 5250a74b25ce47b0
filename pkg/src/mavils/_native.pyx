# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled forward pass for the alignment dynamic program.

Mirrors mavils._dp_py.dp_forward operation-for-operation so both backends
return bit-identical tables and backpointers.
"""

import numpy as np


def dp_forward(const double[:, ::1] S, const double[:, ::1] P, const double[:, ::1] L):
    """Fill the decision table; see mavils._dp_py.dp_forward."""
    cdef Py_ssize_t n = S.shape[0]
    cdef Py_ssize_t m = S.shape[1]

    back_arr = np.zeros((n, m), dtype=np.intc)
    prev_arr = np.empty(m, dtype=np.float64)
    cur_arr = np.empty(m, dtype=np.float64)
    cdef int[:, ::1] back = back_arr
    cdef double[::1] prev = prev_arr
    cdef double[::1] cur = cur_arr

    cdef Py_ssize_t i, j, k, arg
    cdef double best, cand

    with nogil:
        for j in range(m):
            prev[j] = S[0, j] - L[0, j]
        for i in range(1, n):
            for j in range(m):
                best = prev[0] - P[0, j]
                arg = 0
                for k in range(1, m):
                    cand = prev[k] - P[k, j]
                    if cand > best:  # strict: ties keep the smallest k
                        best = cand
                        arg = k
                back[i, j] = <int> arg
                cur[j] = (best - L[i, j]) + S[i, j]
            for j in range(m):
                prev[j] = cur[j]

    return prev_arr, back_arr
