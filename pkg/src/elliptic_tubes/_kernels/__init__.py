"""Raster membership kernels.

Two interchangeable implementations: a Cython extension built at install
time and a pure numpy fallback.  The extension is preferred when importable;
set ``ELLIPTIC_TUBES_PURE=1`` to force the fallback (the benchmark and the
cross-checking tests do this).

Kernel contract
---------------
``pairwise_bitmap(fam_a, fam_b, w_re, w_im)``
    For a functional family evaluated on a complex line ``z(w) = A + w B``
    the values are ``v_k(w) = fam_a[k] + w fam_b[k]``.  A pixel is inside
    the tube exactly when ``Re(v_p conj(v_q)) > 0`` for every pair
    ``p <= q``.  Returns a uint8 bitmap of shape ``(len(w_im), len(w_re))``
    (row i, column j holds ``w = w_re[j] + i w_im[i]``).

``ellipsoid_bitmap(center, shape, aff_a, aff_b, w_re, w_im)``
    ``aff_a, aff_b`` are chart-evaluated lifts (n basis values plus the
    chart-infinity value last).  A pixel with chart value
    ``zeta = head / last`` is inside the tube over the ellipsoid exactly
    when ``(Re zeta - c)^T S (Re zeta - c) + (Im zeta)^T S (Im zeta) < 1``;
    pixels at chart infinity are outside.
"""

import os

from . import _numpy_impl

if os.environ.get("ELLIPTIC_TUBES_PURE"):
    _impl = _numpy_impl
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _numpy_impl

pairwise_bitmap = _impl.pairwise_bitmap
ellipsoid_bitmap = _impl.ellipsoid_bitmap


def backend():
    """Name of the active implementation: 'compiled' or 'numpy'."""
    return "compiled" if _impl is not _numpy_impl else "numpy"


def implementations():
    """Both implementations when available (for benchmarks and tests)."""
    impls = {"numpy": _numpy_impl}
    try:
        from . import _speedups

        impls["compiled"] = _speedups
    except ImportError:
        pass
    return impls
