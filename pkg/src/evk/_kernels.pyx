# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Signatures mirror ``_fallback``."""
import numpy as np

cimport numpy as cnp

ctypedef fused scalar_t:
    double
    double complex


def enumerate_solutions(B, b, long m, Py_ssize_t n):
    """Odometer walk over Z_m^n keeping the residual B x - b updated per step."""
    cdef cnp.int64_t[:, ::1] Bt = np.ascontiguousarray(
        (np.asarray(B, dtype=np.int64).reshape(-1, n) % m).T
    )
    cdef Py_ssize_t rows = Bt.shape[1]
    cdef cnp.int64_t[::1] res = np.ascontiguousarray(-np.asarray(b, dtype=np.int64) % m)
    cdef cnp.int64_t[::1] x = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t i, j, e
    cdef bint ok
    found = []
    cdef long long total = 1
    for i in range(n):
        total *= m
    cdef long long step
    for step in range(total):
        ok = True
        for e in range(rows):
            if res[e] != 0:
                ok = False
                break
        if ok:
            found.append(np.asarray(x).copy())
        # increment: bumping x_j by one adds column j (a full wrap adds m*col = 0)
        j = 0
        while j < n:
            for e in range(rows):
                res[e] += Bt[j, e]
                if res[e] >= m:
                    res[e] -= m
            x[j] += 1
            if x[j] < m:
                break
            x[j] = 0
            j += 1
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(found)


def _apply(const cnp.int64_t[:, ::1] idx, const cnp.int64_t[::1] term_entry,
           const cnp.int64_t[::1] term_skip, const cnp.int64_t[::1] term_vertex,
           const double[::1] term_coef, scalar_t[::1] x, scalar_t[::1] out):
    cdef Py_ssize_t t, q, e, m = idx.shape[1]
    cdef scalar_t prod
    for t in range(term_entry.shape[0]):
        e = term_entry[t]
        prod = term_coef[t]
        for q in range(m):
            if q != term_skip[t]:
                prod = prod * x[idx[e, q]]
        out[term_vertex[t]] += prod


def apply_terms(idx, term_entry, term_skip, term_vertex, term_coef, x, Py_ssize_t n):
    x = np.ascontiguousarray(x)
    if np.iscomplexobj(x):
        x = x.astype(np.complex128, copy=False)
    else:
        x = x.astype(np.float64, copy=False)
    out = np.zeros(n, dtype=x.dtype)
    if len(term_entry):
        _apply(idx, term_entry, term_skip, term_vertex, term_coef, x, out)
    return out
