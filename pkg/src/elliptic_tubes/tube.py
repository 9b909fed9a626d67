"""Elliptic tubes over properly convex domains.

The tube over a domain D of RP^n is the union, over all open segments I
inside D, of the disks in the complexified lines having I as a diameter.
Working in D's chart, a non-real point z = x + iy with trace line
``t -> x + t y_hat`` and clip interval (a, b) lies in the tube exactly when
its line coordinate ``i |y|`` falls inside the Euclidean disk with diameter
(a, b); equivalently when ``p(z) p(conj z) < 1`` for the ray exit gauge p.

Membership is implemented twice on purpose: through the slice geometry
(`contains`) and through the pairwise functional inequality
(`contains_pairwise`); the two routes are compared by the verifiers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diskgeom import distance_from_angle, geodesic_foot, poincare_distance
from .domains import ConvexDomain, HDomain, Interval
from .errors import (
    EmptySliceError,
    InfinityError,
    NotInteriorError,
    OutsideTubeError,
    RealPointError,
    RepresentationError,
    UnsupportedConfigurationError,
    ZeroDirectionError,
)
from .projective import HPoint, RealLine, is_real

# chart-level reality band: imaginary part below this relative size is dust
_REAL_BAND = 1e-12

INTERIOR = "Interior"
EXTERIOR = "Exterior"
REAL_BOUNDARY = "RealBoundary"
COMPLEX_BOUNDARY = "ComplexBoundary"


@dataclass(frozen=True)
class SliceDisk:
    """The disk cut out of a tube by one complexified real line.

    Line coordinates refer to the chart parametrization
    ``tau -> x0 + tau * direction`` with a unit chart direction; the clip
    interval is (a, b).  ``to_unit_disk`` is the real affine map sending the
    interval onto (-1, 1) (so it commutes with complex conjugation), and the
    slice itself onto the open unit disk.
    """

    line: RealLine
    interval: Interval
    x0: np.ndarray
    direction: np.ndarray
    a: float
    b: float

    def to_unit_disk(self, tau):
        return (2.0 * tau - (self.a + self.b)) / (self.b - self.a)

    def from_unit_disk(self, m):
        return 0.5 * ((self.b - self.a) * m + (self.a + self.b))

    def coord(self, zeta, tol=1e-9):
        """Line coordinate of a chart point on the complexified line."""
        zeta = np.asarray(zeta, dtype=np.complex128).reshape(self.x0.shape)
        tau = (zeta - self.x0) @ self.direction
        residual = np.linalg.norm(zeta - self.x0 - tau * self.direction)
        scale = 1.0 + np.linalg.norm(zeta)
        if residual > tol * scale:
            raise UnsupportedConfigurationError("point is not on the slice line")
        if abs(tau.imag) <= _REAL_BAND * (1.0 + abs(tau)):
            return float(tau.real)
        return complex(tau)

    def point(self, tau):
        """Chart point of a line coordinate (complex allowed)."""
        return self.x0 + tau * self.direction

    def poincare(self, tau1, tau2):
        """Poincare distance between two line coordinates inside the slice."""
        m1 = self.to_unit_disk(complex(tau1))
        m2 = self.to_unit_disk(complex(tau2))
        try:
            return poincare_distance(m1, m2)
        except ValueError:
            raise OutsideTubeError("both points must lie inside the slice")


class Tube:
    """The elliptic tube over a properly convex base domain."""

    def __init__(self, base: ConvexDomain):
        self.base = base
        self.n = base.n
        self.chart = base.chart

    # ------------------------------------------------------------------
    # coordinates

    def chart_complex(self, z):
        """Complex chart coordinates of a point; None at chart infinity."""
        if isinstance(z, HPoint):
            try:
                zeta = self.chart.to_chart(z)
            except InfinityError:
                return None
            return np.atleast_1d(np.asarray(zeta, dtype=np.complex128))
        arr = np.asarray(z)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        if arr.shape != (self.n,):
            raise ValueError(f"expected a chart point of C^{self.n}")
        return arr.astype(np.complex128)

    def _split(self, z):
        """(x, y, is_real) with the chart-level reality band applied."""
        zeta = self.chart_complex(z)
        if zeta is None:
            return None
        x = zeta.real.copy()
        y = zeta.imag.copy()
        if np.linalg.norm(y) <= _REAL_BAND * (1.0 + np.linalg.norm(x)):
            return x, np.zeros_like(y), True
        return x, y, False

    def hpoint(self, zeta):
        """HPoint of complex chart coordinates."""
        zeta = np.asarray(zeta, dtype=np.complex128)
        lift = self.chart.inverse @ np.append(zeta, 1.0)
        return HPoint(lift)

    # ------------------------------------------------------------------
    # membership

    def contains(self, z):
        """Slice-route membership: clip the trace line, test the disk."""
        parts = self._split(z)
        if parts is None:
            return False
        x, y, real_flag = parts
        if real_flag:
            return self.base.contains(x)
        speed = np.linalg.norm(y)
        clip = self.base.line_clip((x, y / speed))
        if clip is None:
            return False
        c = clip.midpoint
        r = 0.5 * clip.length
        return speed * speed + c * c < r * r

    def contains_pairwise(self, z):
        """Functional-route membership for H-domain bases:
        ``Re(f(z) conj(g(z))) > 0`` for every pair of family members."""
        if not isinstance(self.base.rep, HDomain):
            raise RepresentationError("the pairwise test needs an H-domain base")
        parts = self._split(z)
        if parts is None:
            return False
        zeta = self.chart_complex(z)
        vals = self.base.rows() @ np.append(zeta, 1.0)
        gram = np.real(np.outer(vals, np.conj(vals)))
        return bool(gram.min() > 0.0)

    def violation(self, zeta):
        """Signed, scale-free membership defect (negative strictly inside).

        For row representations this is the worst normalized pairwise value;
        for ellipsoids the defect of the closed-form quadratic bound.
        """
        zeta = np.asarray(zeta, dtype=np.complex128).reshape(self.n)
        lift = np.append(zeta, 1.0)
        if self.base._rows is not None:
            vals = self.base.rows() @ lift
            gram = np.real(np.outer(vals, np.conj(vals)))
            return float(-gram.min() / (np.linalg.norm(lift) ** 2))
        center, shape = self.base.ellipsoid_data()
        u = zeta.real - center
        v = zeta.imag
        return float(u @ shape @ u + v @ shape @ v - 1.0)

    # ------------------------------------------------------------------
    # slices

    def slice_disk(self, z):
        """The slice through a non-real tube-chart point."""
        parts = self._split(z)
        if parts is None:
            raise InfinityError("point lies at chart infinity")
        x, y, real_flag = parts
        if real_flag:
            raise RealPointError("a real point does not select a unique slice")
        direction = y / np.linalg.norm(y)
        return self.slice_on_line(x, direction)

    def slice_on_line(self, x0, direction):
        """The slice over the real chart line ``t -> x0 + t direction``."""
        x0 = np.asarray(x0, dtype=np.float64).reshape(self.n)
        direction = np.asarray(direction, dtype=np.float64).reshape(self.n)
        norm = np.linalg.norm(direction)
        if not norm > 0.0:
            raise ZeroDirectionError("slice direction must be nonzero")
        direction = direction / norm
        clip = self.base.line_clip((x0, direction))
        if clip is None:
            raise EmptySliceError("the line does not meet the base domain")
        return SliceDisk(
            line=clip.line,
            interval=clip,
            x0=x0,
            direction=direction,
            a=clip.a,
            b=clip.b,
        )

    # ------------------------------------------------------------------
    # boundary gauges

    def _gauges(self, z):
        """(p(z), p(conj z)) for z = x + iy with x in the base domain."""
        parts = self._split(z)
        if parts is None:
            raise OutsideTubeError("point lies at chart infinity")
        x, y, real_flag = parts
        if not self.base.contains(x):
            raise NotInteriorError("the real part must lie inside the base")
        if real_flag:
            return 0.0, 0.0
        speed = np.linalg.norm(y)
        clip = self.base.line_clip((x, y / speed))
        # x interior implies a < 0 < b
        return speed / clip.b, speed / (-clip.a)

    def p_value(self, z):
        """Ray exit gauge: 1 / s* where the ray ``x + s y`` leaves the base
        at s = s*; zero for real points."""
        p_plus, _ = self._gauges(z)
        return p_plus

    def u_value(self, z):
        """Boundary angle ``arctan(p + p~, 1 - p p~)`` in [0, pi/2)."""
        p_plus, p_minus = self._gauges(z)
        prod = p_plus * p_minus
        if prod >= 1.0 + 1e-12:
            raise OutsideTubeError("point lies outside the closed tube")
        return math.atan2(p_plus + p_minus, 1.0 - prod)

    def core_distance(self, z):
        """Kobayashi distance to the real core and the nearest core point.

        The distance is ``artanh(tan(u/2))``; the foot is computed
        geometrically in the normalized slice disk and mapped back.  Both
        routes to the distance agree within 1e-9.
        """
        parts = self._split(z)
        if parts is None:
            raise OutsideTubeError("point lies at chart infinity")
        x, y, real_flag = parts
        if real_flag:
            if not self.base.contains(x):
                raise NotInteriorError("the real part must lie inside the base")
            return 0.0, x
        u = self.u_value(z)
        dist = distance_from_angle(u)
        disk = self.slice_disk(z)
        w = disk.to_unit_disk(disk.coord(self.chart_complex(z)))
        foot_disk, _ = geodesic_foot(w)
        foot = disk.point(disk.from_unit_disk(foot_disk)).real
        return dist, foot

    def boundary_classify(self, z, band=1e-8):
        """Interior / Exterior / RealBoundary / ComplexBoundary with a
        tolerance band.

        Real points are classified against the base boundary by chart
        margin; non-real points by the gauge product ``p(z) p(conj z)``
        (equal to 1 exactly on the non-real tube boundary).
        """
        parts = self._split(z)
        if parts is None:
            return EXTERIOR
        x, y, real_flag = parts
        if real_flag:
            m = self.base.margin(x)
            if abs(m) < band:
                return REAL_BOUNDARY
            return INTERIOR if m > 0.0 else EXTERIOR
        if self.base.margin(x) <= 0.0:
            return EXTERIOR
        speed = np.linalg.norm(y)
        clip = self.base.line_clip((x, y / speed))
        if clip is None or clip.a >= 0.0 or clip.b <= 0.0:
            return EXTERIOR
        prod = (speed / clip.b) * (speed / -clip.a)
        if abs(prod - 1.0) < band:
            return COMPLEX_BOUNDARY
        return INTERIOR if prod < 1.0 else EXTERIOR

    # ------------------------------------------------------------------
    # two-point distance

    def kobayashi_supported(self, z, w):
        """Two-point distance on the supported configurations.

        Real pairs use the slice of their common real line; complex pairs
        must share one complexified real line.  Both cases reduce to the
        Poincare distance in the normalized slice disk.
        """
        zz = self._split(z)
        ww = self._split(w)
        if zz is None or ww is None:
            raise OutsideTubeError("points must be finite in the chart")
        xz, yz, z_real = zz
        xw, yw, w_real = ww
        if z_real and w_real:
            if not (self.base.contains(xz) and self.base.contains(xw)):
                raise NotInteriorError("real points must lie inside the base")
            sep = np.linalg.norm(xw - xz)
            if sep < 1e-15:
                return 0.0
            disk = self.slice_on_line(xz, (xw - xz) / sep)
            return disk.poincare(0.0, sep)
        anchor = z if not z_real else w
        disk = self.slice_disk(anchor)
        tau_z = disk.coord(self.chart_complex(z))
        tau_w = disk.coord(self.chart_complex(w))
        return disk.poincare(tau_z, tau_w)

    # ------------------------------------------------------------------
    # boxes and samplers

    def bounding_box(self):
        """(re_lo, re_hi, im_half): the tube lies inside
        ``[re_lo, re_hi] + i [-im_half, im_half]^n``."""
        lo, hi = self.base.bbox
        diam = float(np.linalg.norm(hi - lo))
        return lo, hi, np.full(self.n, diam)

    def sample_points(self, rng, count, band=1e-6):
        """Interior tube samples in chart coordinates, rejecting a boundary
        band (gauge product within ``band`` of 1, or real part within
        ``band`` of the base boundary)."""
        lo, hi, im_half = self.bounding_box()
        out = np.empty((count, self.n), dtype=np.complex128)
        got = 0
        while got < count:
            x = rng.uniform(lo, hi, size=self.n)
            y = rng.uniform(-im_half, im_half)
            zeta = x + 1j * y
            if not self.contains(zeta):
                continue
            if self.base.margin(x) < band:
                continue
            speed = np.linalg.norm(y)
            if speed > _REAL_BAND:
                clip = self.base.line_clip((x, y / speed))
                prod = (speed / clip.b) * (speed / -clip.a)
                if abs(prod - 1.0) < band:
                    continue
            out[got] = zeta
            got += 1
        return out

    def sample_exterior(self, rng, count, band=1e-6, spread=1.0):
        """Exterior samples from an inflated bounding box, excluding the
        boundary band."""
        lo, hi, im_half = self.bounding_box()
        center = 0.5 * (lo + hi)
        lo = center + (1.0 + spread) * (lo - center)
        hi = center + (1.0 + spread) * (hi - center)
        im_half = (1.0 + spread) * im_half
        out = np.empty((count, self.n), dtype=np.complex128)
        got = 0
        while got < count:
            x = rng.uniform(lo, hi, size=self.n)
            y = rng.uniform(-im_half, im_half)
            zeta = x + 1j * y
            if self.boundary_classify(zeta, band=band) != EXTERIOR:
                continue
            out[got] = zeta
            got += 1
        return out

    def __repr__(self):
        return f"Tube(base={self.base!r})"


def interval_gauges(a, b, s, t):
    """Gauge pair for a point ``s + i t`` over the strip of an interval
    (a, b): ``p = |t| / (b - s)`` on the upper branch and
    ``|t| / (s - a)`` on the lower one (vectorized helper for rasters)."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        p_plus = np.abs(t) / (b - s)
        p_minus = np.abs(t) / (s - a)
    return p_plus, p_minus
