# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: inverse-coefficient objectives and the Omega oracle.

Same contracts as ``_pykernels``; see that module for the flat point layout.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, cos, sin, fabs, M_PI

cnp.import_array()

cdef double MIN_STEP = 1e-13


cdef inline double abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex conj(double complex z) noexcept nogil:
    return z.real - z.imag * 1j


cdef double delta_abs_c(double b2, double b3, double b4, double b5, int n,
                        double complex z1, double complex z2,
                        double complex z3, double complex z4) noexcept nogil:
    cdef double s1 = abs2(z1)
    cdef double a = 1.0 - s1
    cdef double bb = 1.0 - abs2(z2)
    cdef double cc = 1.0 - abs2(z3)
    cdef double complex z1c = conj(z1)
    cdef double complex z1sq = z1 * z1
    cdef double complex z2sq = z2 * z2
    cdef double complex c1 = 2.0 * z1
    cdef double complex c2, c3, c4, a2, a3, a4, a5, d, a2sq
    a2 = (b2 + c1) / 2.0
    if n == 2:
        d = -a2
        return sqrt(abs2(d))
    c2 = 2.0 * z1sq + 2.0 * a * z2
    a3 = (b3 + b2 * c1 + c2) / 3.0
    if n == 3:
        d = 2.0 * a2 * a2 - a3
        return sqrt(abs2(d))
    c3 = 2.0 * z1sq * z1 + 4.0 * a * z1 * z2 - 2.0 * a * z1c * z2sq + 2.0 * a * bb * z3
    a4 = (b4 + c1 * b3 + c2 * b2 + c3) / 4.0
    if n == 4:
        d = 5.0 * a2 * a3 - 5.0 * a2 * a2 * a2 - a4
        return sqrt(abs2(d))
    c4 = 2.0 * (z1sq * z1sq
                + a * (3.0 * z1sq * z2 - 2.0 * z2sq * s1 + z1c * z1c * z2sq * z2)
                + z2sq * a * a
                + a * bb * (2.0 * z1 * z3 - 2.0 * z1c * z2 * z3 - conj(z2) * z3 * z3 + cc * z4))
    a5 = (b5 + b4 * c1 + b3 * c2 + b2 * c3 + c4) / 5.0
    a2sq = a2 * a2
    d = 14.0 * a2sq * a2sq - 21.0 * a2sq * a3 + 6.0 * a2 * a4 + 3.0 * a3 * a3 - a5
    return sqrt(abs2(d))


cdef inline void unpack(const double[::1] x, Py_ssize_t m, bint real_z1,
                        double complex* zs) noexcept nogil:
    cdef Py_ssize_t off, j, k
    if real_z1:
        zs[0] = x[0] + 0.0 * 1j
        off = 1
    else:
        zs[0] = x[0] + x[1] * 1j
        off = 2
    for k in range(3):
        j = off + 2 * k
        if j + 1 < m:
            zs[k + 1] = x[j] + x[j + 1] * 1j
        else:
            zs[k + 1] = 0.0
    return


def delta_abs_batch(b, int n, pts, bint real_z1):
    if n < 2 or n > 5:
        raise ValueError(f"n must be in 2..5, got {n}")
    cdef double[:, ::1] P = np.ascontiguousarray(pts, dtype=np.float64)
    cdef Py_ssize_t N = P.shape[0], m = P.shape[1], i
    cdef double b2 = b[0], b3 = b[1], b4 = b[2], b5 = b[3]
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] o = out
    cdef double complex zs[4]
    with nogil:
        for i in range(N):
            unpack(P[i], m, real_z1, zs)
            o[i] = delta_abs_c(b2, b3, b4, b5, n, zs[0], zs[1], zs[2], zs[3])
    return out


def delta_abs_point(b, int n, x, bint real_z1):
    if n < 2 or n > 5:
        raise ValueError(f"n must be in 2..5, got {n}")
    cdef double[::1] X = np.ascontiguousarray(x, dtype=np.float64)
    cdef double complex zs[4]
    unpack(X, X.shape[0], real_z1, zs)
    return delta_abs_c(b[0], b[1], b[2], b[3], n, zs[0], zs[1], zs[2], zs[3])


cdef inline double omega_value(double A, double B, double C, double aM,
                               double x, double y) noexcept nogil:
    cdef double re = A + B * x + C * (x * x - y * y)
    cdef double im = B * y + 2.0 * C * x * y
    return aM * (1.0 - (x * x + y * y)) + hypot(re, im)


def omega_oracle(double A, double B, double C, double M, int grid_n, int refine_iters):
    cdef double aM = fabs(M)
    cdef int i, j, it, nang = 4 * grid_n
    cdef double r, th, px, py, val, r2, h, h0
    cdef double bx = 0.0, by = 0.0
    cdef double best, cand_val, cx, cy
    cdef bint found
    cdef long evals = 1
    with nogil:
        best = omega_value(A, B, C, aM, 0.0, 0.0)
        for i in range(1, grid_n + 1):
            r = <double>i / grid_n
            for j in range(nang):
                th = j * (2.0 * M_PI / nang)
                px = r * cos(th)
                py = r * sin(th)
                val = omega_value(A, B, C, aM, px, py)
                evals += 1
                if val > best:
                    best = val
                    bx = px
                    by = py
        best = omega_value(A, B, C, aM, bx, by)
        evals += 1
        h0 = 1.0 / grid_n
        h = h0
        for it in range(refine_iters):
            found = False
            cand_val = best
            cx = bx
            cy = by
            # 9 x 9 stencil, row-major in y then x to match the NumPy version
            for i in range(9):
                for j in range(9):
                    px = bx + h * (-1.0 + 0.25 * j)
                    py = by + h * (-1.0 + 0.25 * i)
                    r2 = px * px + py * py
                    if r2 > 1.0:
                        r = sqrt(r2)
                        px = px / r
                        py = py / r
                    val = omega_value(A, B, C, aM, px, py)
                    evals += 1
                    if val > cand_val:
                        cand_val = val
                        cx = px
                        cy = py
                        found = True
            if found:
                bx = cx
                by = cy
                best = cand_val
                h = 2.0 * h if 2.0 * h < h0 else h0
            else:
                h *= 0.5
                if h < MIN_STEP:
                    break
    return best, bx, by, evals
