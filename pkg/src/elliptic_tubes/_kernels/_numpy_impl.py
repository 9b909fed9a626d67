"""Vectorized numpy implementation of the raster kernels."""

import numpy as np

_INFINITY_TOL = 1e-300


def pairwise_bitmap(fam_a, fam_b, w_re, w_im):
    fam_a = np.asarray(fam_a, dtype=np.complex128)
    fam_b = np.asarray(fam_b, dtype=np.complex128)
    w = np.asarray(w_re, dtype=np.float64)[None, :] + 1j * np.asarray(
        w_im, dtype=np.float64
    )[:, None]
    m = len(fam_a)
    vals = fam_a[:, None, None] + w[None, :, :] * fam_b[:, None, None]
    ok = np.ones(w.shape, dtype=bool)
    for p in range(m):
        vp_conj = np.conj(vals[p])
        for q in range(p, m):
            ok &= (vals[q] * vp_conj).real > 0.0
    return ok.astype(np.uint8)


def ellipsoid_bitmap(center, shape, aff_a, aff_b, w_re, w_im):
    center = np.asarray(center, dtype=np.float64)
    shape = np.asarray(shape, dtype=np.float64)
    aff_a = np.asarray(aff_a, dtype=np.complex128)
    aff_b = np.asarray(aff_b, dtype=np.complex128)
    w = np.asarray(w_re, dtype=np.float64)[None, :] + 1j * np.asarray(
        w_im, dtype=np.float64
    )[:, None]
    last = aff_a[-1] + w * aff_b[-1]
    finite = np.abs(last) > _INFINITY_TOL
    safe_last = np.where(finite, last, 1.0)
    head = aff_a[:-1, None, None] + w[None, :, :] * aff_b[:-1, None, None]
    zeta = head / safe_last[None, :, :]
    u = zeta.real - center[:, None, None]
    v = zeta.imag
    q = np.einsum("irc,ij,jrc->rc", u, shape, u) + np.einsum(
        "irc,ij,jrc->rc", v, shape, v
    )
    ok = finite & np.isfinite(q) & (q < 1.0)
    return ok.astype(np.uint8)
