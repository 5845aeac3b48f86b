# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled SGNS update loop; same semantics as ``_sgns_fallback.train_pairs``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double SIGMOID_CLIP = 50.0


cdef inline double _sigmoid(double x) noexcept nogil:
    if x > SIGMOID_CLIP:
        x = SIGMOID_CLIP
    elif x < -SIGMOID_CLIP:
        x = -SIGMOID_CLIP
    return 1.0 / (1.0 + exp(-x))


def train_pairs(double[:, ::1] w_in, double[:, ::1] w_out,
                const cnp.int64_t[::1] centers, const cnp.int64_t[::1] contexts,
                const cnp.int64_t[:, ::1] negatives, const double[::1] alphas):
    cdef Py_ssize_t n = centers.shape[0]
    cdef Py_ssize_t k = negatives.shape[1]
    cdef Py_ssize_t dim = w_in.shape[1]
    cdef Py_ssize_t p, t, d, nt
    cdef cnp.int64_t c, o, row
    cdef double dot, f, loss = 0.0
    cdef double *v = <double *> malloc(dim * sizeof(double))
    cdef double *g = <double *> malloc((k + 1) * sizeof(double))
    cdef cnp.int64_t *rows = <cnp.int64_t *> malloc((k + 1) * sizeof(cnp.int64_t))
    if v == NULL or g == NULL or rows == NULL:
        free(v); free(g); free(rows)
        raise MemoryError()
    try:
        with nogil:
            for p in range(n):
                c = centers[p]
                o = contexts[p]
                rows[0] = o
                nt = 1
                for t in range(k):
                    if negatives[p, t] != o:
                        rows[nt] = negatives[p, t]
                        nt += 1
                for d in range(dim):
                    v[d] = w_in[c, d]
                # all scores from pre-update rows
                for t in range(nt):
                    row = rows[t]
                    dot = 0.0
                    for d in range(dim):
                        dot = dot + w_out[row, d] * v[d]
                    f = _sigmoid(dot)
                    if t == 0:
                        loss -= log(f)
                        g[t] = (1.0 - f) * alphas[p]
                    else:
                        loss -= log1p(-f)
                        g[t] = -f * alphas[p]
                for t in range(nt):
                    row = rows[t]
                    for d in range(dim):
                        w_in[c, d] += g[t] * w_out[row, d]
                for t in range(nt):
                    row = rows[t]
                    for d in range(dim):
                        w_out[row, d] += g[t] * v[d]
    finally:
        free(v); free(g); free(rows)
    return loss
