# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: radix-2 FFT and cyclic complex Jacobi.

Both functions mirror ``_pykernels`` exactly in signature and semantics.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, fabs, M_PI

cnp.import_array()


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def fft_radix2(x, bint inverse=False):
    """Unnormalized DFT of a power-of-two length complex vector.

    Forward uses exp(-2 pi i jk/n); ``inverse=True`` flips the sign only.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.array(x, dtype=np.complex128, copy=True)
    cdef Py_ssize_t n = out.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    cdef double complex[::1] a = out
    cdef double complex[::1] tw
    cdef Py_ssize_t i, j, bit, half, start, k, step
    cdef double complex t, u, w
    cdef double sgn = 1.0 if inverse else -1.0
    if n <= 1:
        return out

    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            t = a[i]
            a[i] = a[j]
            a[j] = t

    tw = np.empty(n // 2, dtype=np.complex128)
    for k in range(n // 2):
        tw[k] = cos(2.0 * M_PI * k / n) + 1j * sgn * sin(2.0 * M_PI * k / n)

    half = 1
    with nogil:
        while half < n:
            step = n // (2 * half)
            start = 0
            while start < n:
                for k in range(half):
                    w = tw[k * step]
                    u = a[start + k]
                    t = a[start + k + half] * w
                    a[start + k] = u + t
                    a[start + k + half] = u - t
                start += 2 * half
            half *= 2
    return out


def jacobi_eigvalsh(A, double tol=1e-12, int max_sweeps=100):
    """Eigenvalues (unsorted) of a Hermitian matrix by cyclic Jacobi sweeps.

    Returns ``(eigenvalues, sweeps)``. Stops once the off-diagonal Frobenius
    norm is at most ``tol`` times the Frobenius norm of the input.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.array(A, dtype=np.complex128, order="C", copy=True)
    cdef double complex[:, ::1] a = work
    cdef Py_ssize_t n = work.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double fro = 0.0, off, r, app, aqq, theta, t, c, s
    cdef double complex e, ec, akp, akq
    for p in range(n):
        for q in range(n):
            fro += cabs2(a[p, q])
    fro = sqrt(fro)
    # entries below this cannot affect the stopping test; rotating them underflows
    cdef double floor = 1e-30 * fro

    sweep = 0
    while True:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += cabs2(a[p, q])
        off = sqrt(off)
        if off <= tol * fro:
            break
        if sweep >= max_sweeps:
            raise RuntimeError("Jacobi iteration did not converge")
        sweep += 1
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    r = sqrt(cabs2(a[p, q]))
                    if r <= floor:
                        continue
                    e = a[p, q] / r
                    ec = e.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * r)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * ec * akq
                        a[k, q] = s * akp + c * ec * akq
                    for k in range(n):
                        akp = a[p, k]
                        akq = a[q, k]
                        a[p, k] = c * akp - s * e * akq
                        a[q, k] = s * akp + c * e * akq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * r
                    a[q, q] = aqq + t * r
    eigs = np.empty(n, dtype=np.float64)
    for p in range(n):
        eigs[p] = a[p, p].real
    return eigs, sweep
