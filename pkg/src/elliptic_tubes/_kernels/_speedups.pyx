# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled raster kernels (see the package docstring for the contract)."""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()


def pairwise_bitmap(fam_a, fam_b, w_re, w_im):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fa = np.ascontiguousarray(fam_a, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fb = np.ascontiguousarray(fam_b, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] re = np.ascontiguousarray(w_re, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] im = np.ascontiguousarray(w_im, dtype=np.float64)
    cdef Py_ssize_t m = fa.shape[0]
    cdef Py_ssize_t nc = re.shape[0]
    cdef Py_ssize_t nr = im.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((nr, nc), dtype=np.uint8)
    cdef double *vr = <double *> malloc(m * sizeof(double))
    cdef double *vi = <double *> malloc(m * sizeof(double))
    if vr == NULL or vi == NULL:
        free(vr)
        free(vi)
        raise MemoryError()
    cdef Py_ssize_t i, j, p, q
    cdef double wr, wi, ar, ai, br, bi
    cdef bint ok
    try:
        for i in range(nr):
            wi = im[i]
            for j in range(nc):
                wr = re[j]
                for p in range(m):
                    ar = fa[p].real
                    ai = fa[p].imag
                    br = fb[p].real
                    bi = fb[p].imag
                    vr[p] = ar + wr * br - wi * bi
                    vi[p] = ai + wr * bi + wi * br
                ok = True
                for p in range(m):
                    if not ok:
                        break
                    for q in range(p, m):
                        # Re(v_q * conj(v_p))
                        if vr[q] * vr[p] + vi[q] * vi[p] <= 0.0:
                            ok = False
                            break
                if ok:
                    out[i, j] = 1
    finally:
        free(vr)
        free(vi)
    return out


def ellipsoid_bitmap(center, shape, aff_a, aff_b, w_re, w_im):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c = np.ascontiguousarray(center, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] s = np.ascontiguousarray(shape, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] aa = np.ascontiguousarray(aff_a, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ab = np.ascontiguousarray(aff_b, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] re = np.ascontiguousarray(w_re, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] im = np.ascontiguousarray(w_im, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t nc = re.shape[0]
    cdef Py_ssize_t nr = im.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((nr, nc), dtype=np.uint8)
    cdef double *u = <double *> malloc(n * sizeof(double))
    cdef double *v = <double *> malloc(n * sizeof(double))
    if u == NULL or v == NULL:
        free(u)
        free(v)
        raise MemoryError()
    cdef Py_ssize_t i, j, p, q
    cdef double wr, wi, lr, li, mag, hr, hi, quad, row_u, row_v
    try:
        for i in range(nr):
            wi = im[i]
            for j in range(nc):
                wr = re[j]
                lr = aa[n].real + wr * ab[n].real - wi * ab[n].imag
                li = aa[n].imag + wr * ab[n].imag + wi * ab[n].real
                mag = lr * lr + li * li
                if mag < 1e-300:
                    continue
                for p in range(n):
                    hr = aa[p].real + wr * ab[p].real - wi * ab[p].imag
                    hi = aa[p].imag + wr * ab[p].imag + wi * ab[p].real
                    # (hr + i hi) / (lr + i li)
                    u[p] = (hr * lr + hi * li) / mag - c[p]
                    v[p] = (hi * lr - hr * li) / mag
                quad = 0.0
                for p in range(n):
                    row_u = 0.0
                    row_v = 0.0
                    for q in range(n):
                        row_u += s[p, q] * u[q]
                        row_v += s[p, q] * v[q]
                    quad += u[p] * row_u + v[p] * row_v
                if quad < 1.0:
                    out[i, j] = 1
    finally:
        free(u)
        free(v)
    return out
