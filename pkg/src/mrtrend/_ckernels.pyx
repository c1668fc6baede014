# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; see ``_pykernels`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs, M_PI, INFINITY

cnp.import_array()

BACKEND = "cython"


def local_extrema(const double[::1] x, Py_ssize_t w):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k, j, nmax = 0, nmin = 0
    cdef bint is_max, is_min
    cdef double c
    if n < 2 * w + 1:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    cdef cnp.int64_t[::1] mx = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] mn = np.empty(n, dtype=np.int64)
    for k in range(w, n - w):
        c = x[k]
        is_max = True
        is_min = True
        for j in range(k - w, k):
            if x[j] >= c:
                is_max = False
            if x[j] <= c:
                is_min = False
            if not is_max and not is_min:
                break
        if is_max or is_min:
            for j in range(k + 1, k + w + 1):
                if x[j] > c:
                    is_max = False
                if x[j] < c:
                    is_min = False
                if not is_max and not is_min:
                    break
        if is_max:
            mx[nmax] = k
            nmax += 1
        if is_min:
            mn[nmin] = k
            nmin += 1
    return np.asarray(mx[:nmax]).copy(), np.asarray(mn[:nmin]).copy()


def scan_line_states(state, Py_ssize_t confirm):
    cdef const signed char[::1] s = np.ascontiguousarray(state, dtype=np.int8)
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t k = 0, j, r, start, nev = 0
    cdef int side = 0
    cdef bint crossed
    cdef cnp.int64_t[::1] ords = np.empty(n, dtype=np.int64)
    cdef signed char[::1] kinds = np.empty(n, dtype=np.int8)
    while k < n:
        if side == 0:
            if s[k] != 0:
                side = s[k]
            k += 1
            continue
        if s[k] == side:
            k += 1
            continue
        start = k
        j = k
        crossed = False
        while j < n and s[j] != side:
            if s[j] == -side:
                r = j
                while r < n and s[r] == -side:
                    r += 1
                if r - j >= confirm:
                    ords[nev] = j
                    kinds[nev] = -side
                    nev += 1
                    side = -side
                    k = r
                    crossed = True
                    break
                j = r
            else:
                j += 1
        if crossed:
            continue
        if j < n:
            ords[nev] = start
            kinds[nev] = 0
            nev += 1
        k = j
    return np.asarray(ords[:nev]).copy(), np.asarray(kinds[:nev]).copy()


cdef bint _solve4(double[:, ::1] M, double[::1] r, double[::1] x) nogil:
    cdef int c, i, j, piv
    cdef double f, t, best, scale = 0.0
    for i in range(4):
        if fabs(M[i, i]) > scale:
            scale = fabs(M[i, i])
    if scale == 0.0:
        scale = 1.0
    for c in range(4):
        piv = c
        best = fabs(M[c, c])
        for i in range(c + 1, 4):
            if fabs(M[i, c]) > best:
                best = fabs(M[i, c])
                piv = i
        if best <= 1e-13 * scale:
            return False
        if piv != c:
            for j in range(4):
                t = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = t
            t = r[c]
            r[c] = r[piv]
            r[piv] = t
        for i in range(c + 1, 4):
            f = M[i, c] / M[c, c]
            for j in range(c, 4):
                M[i, j] -= f * M[c, j]
            r[i] -= f * r[c]
    for i in range(3, -1, -1):
        t = r[i]
        for j in range(i + 1, 4):
            t -= M[i, j] * x[j]
        x[i] = t / M[i, i]
    return True


def sinusoid_grid(tau_in, y_in, periods_in):
    cdef const double[::1] tau = np.ascontiguousarray(tau_in, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef const double[::1] periods = np.ascontiguousarray(periods_in, dtype=np.float64)
    cdef Py_ssize_t n = tau.shape[0], m = periods.shape[0]
    cdef Py_ssize_t i, k, a, b
    cdef double centre = 0.5 * (tau[0] + tau[n - 1])
    cdef double half = 0.5 * (tau[n - 1] - tau[0])
    cdef double om, yy = 0.0, dot
    cdef double v[4]
    sse_arr = np.full(m, np.inf)
    coef_arr = np.zeros((m, 4))
    cdef double[::1] sse = sse_arr
    cdef double[:, ::1] coef = coef_arr
    cdef double[:, ::1] A = np.empty((4, 4))
    cdef double[::1] rhs = np.empty(4)
    cdef double[::1] beta = np.empty(4)
    cdef double[::1] keep = np.empty(4)
    if half <= 0:
        half = 1.0
    for k in range(n):
        yy += y[k] * y[k]
    with nogil:
        for i in range(m):
            om = 2.0 * M_PI / periods[i]
            for a in range(4):
                rhs[a] = 0.0
                for b in range(4):
                    A[a, b] = 0.0
            for k in range(n):
                v[0] = 1.0
                v[1] = (tau[k] - centre) / half
                v[2] = sin(om * tau[k])
                v[3] = cos(om * tau[k])
                for a in range(4):
                    rhs[a] += v[a] * y[k]
                    for b in range(a, 4):
                        A[a, b] += v[a] * v[b]
            for a in range(4):
                keep[a] = rhs[a]
                for b in range(a):
                    A[a, b] = A[b, a]
            if not _solve4(A, rhs, beta):
                continue
            dot = 0.0
            for a in range(4):
                coef[i, a] = beta[a]
                dot += beta[a] * keep[a]
            sse[i] = yy - dot if yy - dot > 0.0 else 0.0
    return sse_arr, coef_arr
