"""Properly convex domains of RP^n in three representations.

A domain is bounded inside its own affine chart.  Internally every
representation is reduced to chart data with the chart lift ``(x, 1)``:

* V-polytope: vertex chart coordinates plus derived facet rows,
* H-domain: functional rows ``g`` with ``g . (x, 1) > 0`` on the domain,
* ellipsoid: ``(x - c)^T S (x - c) < 1`` with S symmetric positive definite.

Facet and functional rows are sign normalized to be positive at the
reference point and scaled to unit Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateError,
    NotInteriorError,
    ValidationError,
    ZeroDirectionError,
)
from .projective import Chart, Functional, HPoint, RealLine, cross_ratio
from .report import VerifierReport

_PARALLEL_TOL = 1e-13
_DEGENERATE_CLIP = 1e-10


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many real points."""

    vertices: tuple

    def __post_init__(self):
        pts = tuple(v if isinstance(v, HPoint) else HPoint(v) for v in self.vertices)
        object.__setattr__(self, "vertices", pts)


@dataclass(frozen=True)
class HDomain:
    """Intersection of functional half spaces (pairwise-positive region)."""

    functionals: tuple

    def __post_init__(self):
        fns = tuple(
            f if isinstance(f, Functional) else Functional(f) for f in self.functionals
        )
        object.__setattr__(self, "functionals", fns)


@dataclass(frozen=True)
class Ellipsoid:
    """Chart ellipsoid ``(x - center)^T shape (x - center) < 1``."""

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=np.float64))
        object.__setattr__(self, "shape", np.asarray(self.shape, dtype=np.float64))


@dataclass(frozen=True)
class Interval:
    """An open segment cut out of a domain by a real line.

    ``a < b`` are parameters of the chart parametrization
    ``t -> x0 + t * direction`` inherited from the line's span basis.  The
    endpoint lifts ``v0, v1`` have chart-infinity component 1, so interior
    points are exactly the classes of ``c0 v0 + c1 v1`` with ``c0 c1 > 0``.
    """

    line: RealLine
    x0: np.ndarray
    direction: np.ndarray
    a: float
    b: float
    v0: np.ndarray
    v1: np.ndarray

    @property
    def length(self):
        return self.b - self.a

    @property
    def midpoint(self):
        return 0.5 * (self.a + self.b)

    def endpoint_points(self):
        return self.x0 + self.a * self.direction, self.x0 + self.b * self.direction


def _facet_rows(verts):
    """Outward facet rows (g, c) with ``g . x + c > 0`` inside the hull."""
    verts = np.asarray(verts, dtype=np.float64)
    n = verts.shape[1]
    if n == 1:
        lo, hi = float(verts.min()), float(verts.max())
        if hi - lo < 1e-12:
            raise ValidationError("interval endpoints coincide")
        rows = np.array([[1.0, -lo], [-1.0, hi]])
    else:
        from scipy.spatial import ConvexHull

        hull = ConvexHull(verts)
        rows = -hull.equations  # equations satisfy A x + b <= 0 inside
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


class ConvexDomain:
    """A properly convex open domain, bounded in its chart."""

    def __init__(self, rep, chart=None, reference_point=None, name=None):
        if isinstance(rep, VPolytope):
            n = rep.vertices[0].dim
        elif isinstance(rep, HDomain):
            n = rep.functionals[0].dim
        elif isinstance(rep, Ellipsoid):
            n = len(rep.center)
        else:
            raise TypeError("rep must be a VPolytope, HDomain or Ellipsoid")
        chart = chart if chart is not None else Chart.standard(n)
        if chart.n != n:
            raise ValidationError("chart dimension does not match the domain")
        self.rep = rep
        self.chart = chart
        self.name = name
        self.n = n

        self._verts = None
        self._rows = None  # unit rows, positive on the domain
        self._center = None
        self._shape = None

        if isinstance(rep, VPolytope):
            self._verts = np.vstack([chart.to_chart(v) for v in rep.vertices])
            if reference_point is None:
                reference_point = self._verts.mean(axis=0)
        elif isinstance(rep, Ellipsoid):
            self._center = rep.center
            self._shape = 0.5 * (rep.shape + rep.shape.T)
            if reference_point is None:
                reference_point = self._center
        else:
            if reference_point is None:
                raise ValidationError(
                    "an H-domain needs a reference point to fix functional signs"
                )

        if isinstance(reference_point, HPoint):
            reference_point = chart.to_chart(reference_point)
        self.reference = np.asarray(reference_point, dtype=np.float64).reshape(n)

        if isinstance(rep, VPolytope):
            self._rows = _facet_rows(self._verts)
        elif isinstance(rep, HDomain):
            rows = np.vstack([chart.inverse.T @ f.coeffs for f in rep.functionals])
            ref_lift = np.append(self.reference, 1.0)
            signs = rows @ ref_lift
            if np.any(np.abs(signs) < 1e-12):
                raise ValidationError("reference point lies on a functional kernel")
            rows = rows * np.sign(signs)[:, None]
            self._rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)

        # rows that actually bound (nonzero chart-normal part), rescaled so
        # the slack equals the Euclidean distance to the hyperplane
        if self._rows is not None:
            normals = np.linalg.norm(self._rows[:, :-1], axis=1)
            keep = normals > 1e-12
            self._bound_rows = self._rows[keep] / normals[keep][:, None]
        else:
            self._bound_rows = None
        self._bbox = None

    # ------------------------------------------------------------------
    # basic queries

    def chart_point(self, x):
        """Coerce an HPoint or chart array to chart coordinates."""
        if isinstance(x, HPoint):
            return self.chart.to_chart(x)
        arr = np.asarray(x)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        if arr.shape != (self.n,):
            raise ValueError(f"expected a point of R^{self.n}")
        return arr

    def contains(self, x):
        """Strict interior membership in chart coordinates."""
        x = self.chart_point(x)
        if np.iscomplexobj(x):
            if np.max(np.abs(x.imag)) > 1e-12 * max(1.0, np.max(np.abs(x))):
                raise ValueError("contains() expects a real chart point")
            x = x.real
        if self._rows is not None:
            return bool(np.all(self._rows @ np.append(x, 1.0) > 0.0))
        d = x - self._center
        return bool(d @ self._shape @ d < 1.0)

    def margin(self, x):
        """Signed proximity to the boundary: positive inside, in chart
        Euclidean units (exact distance to the nearest facet hyperplane for
        row representations, a conservative equivalent for ellipsoids)."""
        x = self.chart_point(x)
        if self._bound_rows is not None:
            return float(np.min(self._bound_rows @ np.append(x, 1.0)))
        d = x - self._center
        q = float(d @ self._shape @ d)
        a_min = 1.0 / np.sqrt(np.linalg.eigvalsh(self._shape)[-1])
        return (1.0 - np.sqrt(max(q, 0.0))) * a_min

    @property
    def bbox(self):
        """Chart bounding box (lo, hi) of the closure."""
        if self._bbox is None:
            self._bbox = self._compute_bbox()
        return self._bbox

    def _compute_bbox(self):
        if self._verts is not None:
            return self._verts.min(axis=0), self._verts.max(axis=0)
        if self._center is not None:
            # a non-SPD shape (caught by validate) would give negative radii
            half = np.sqrt(np.maximum(np.diag(np.linalg.inv(self._shape)), 0.0))
            return self._center - half, self._center + half
        verts = self.vertices_chart()
        return verts.min(axis=0), verts.max(axis=0)

    def vertices_chart(self):
        """Extreme points in chart coordinates (row representations only)."""
        if self._verts is not None:
            return self._verts.copy()
        if self._rows is None:
            raise DegenerateError("an ellipsoid has no vertex set")
        rows = self._bound_rows
        if self.n == 1:
            slopes = rows[:, 0]
            consts = rows[:, 1]
            ups = -consts[slopes > 0] / slopes[slopes > 0]
            downs = -consts[slopes < 0] / slopes[slopes < 0]
            if len(ups) == 0 or len(downs) == 0:
                raise ValidationError("H-domain is unbounded in its chart")
            lo, hi = float(ups.max()), float(downs.min())
            if not lo < hi:
                raise ValidationError("H-domain has empty interior")
            return np.array([[lo], [hi]])
        from scipy.spatial import HalfspaceIntersection

        halfspaces = -rows  # A x + b <= 0 convention
        try:
            inter = HalfspaceIntersection(halfspaces, self.reference.copy())
        except Exception as exc:  # qhull reports unbounded/infeasible input
            raise ValidationError(f"H-domain vertex enumeration failed: {exc}")
        pts = inter.intersections
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        if len(pts) == 0:
            raise ValidationError("H-domain is unbounded in its chart")
        # collapse duplicates
        uniq = []
        for p in pts:
            if not any(np.linalg.norm(p - q) < 1e-9 for q in uniq):
                uniq.append(p)
        return np.vstack(uniq)

    def rows(self):
        """Unit functional/facet rows, positive on the domain."""
        if self._rows is None:
            raise DegenerateError("ellipsoids are not represented by rows")
        return self._rows.copy()

    def functionals(self):
        """Row functionals pulled back to homogeneous coordinates.

        Functional construction normalizes the leading coefficient, so the
        returned family is only defined up to sign per member; use
        ``rows() @ chart.matrix`` where the positive-on-the-cone convention
        matters (the pairwise membership test does).
        """
        return tuple(Functional(self.chart.matrix.T @ g) for g in self.rows())

    def ellipsoid_data(self):
        if self._center is None:
            raise DegenerateError("not an ellipsoid representation")
        return self._center.copy(), self._shape.copy()

    # ------------------------------------------------------------------
    # line geometry

    def _line_data(self, line):
        if isinstance(line, RealLine):
            return line.chart_form(self.chart)
        x0, direction = line
        x0 = np.asarray(x0, dtype=np.float64).reshape(self.n)
        direction = np.asarray(direction, dtype=np.float64).reshape(self.n)
        norm = np.linalg.norm(direction)
        if not norm > 0.0:
            raise ZeroDirectionError("line direction must be nonzero")
        return x0, direction / norm

    def line_clip(self, line):
        """Intersect a real line with the domain.

        ``line`` is a RealLine or an ``(x0, direction)`` pair in chart
        coordinates.  Returns an :class:`Interval` (endpoints exact roots of
        the facet functionals or of the boundary quadric) or None when the
        intersection is empty or shorter than 1e-10.
        """
        x0, direction = self._line_data(line)
        if self._rows is not None:
            alphas = self._rows @ np.append(x0, 1.0)
            betas = self._rows[:, :-1] @ direction
            lo, hi = -np.inf, np.inf
            for alpha, beta in zip(alphas, betas):
                if abs(beta) <= _PARALLEL_TOL:
                    if alpha <= 0.0:
                        return None
                    continue
                root = -alpha / beta
                if beta > 0.0:
                    lo = max(lo, root)
                else:
                    hi = min(hi, root)
            if not np.isfinite(lo) or not np.isfinite(hi):
                raise ValidationError("domain is unbounded along the line")
        else:
            d = x0 - self._center
            a2 = direction @ self._shape @ direction
            a1 = 2.0 * (direction @ self._shape @ d)
            a0 = d @ self._shape @ d - 1.0
            disc = a1 * a1 - 4.0 * a2 * a0
            if disc <= 0.0:
                return None
            sq = np.sqrt(disc)
            lo = (-a1 - sq) / (2.0 * a2)
            hi = (-a1 + sq) / (2.0 * a2)
        if hi - lo < _DEGENERATE_CLIP:
            return None
        if isinstance(line, RealLine):
            rline = line
        else:
            rline = RealLine(
                HPoint(self.chart.lift(x0)), HPoint(self.chart.direction_lift(direction))
            )
        v0 = self.chart.lift(x0 + lo * direction)
        v1 = self.chart.lift(x0 + hi * direction)
        return Interval(
            line=rline,
            x0=x0,
            direction=direction,
            a=float(lo),
            b=float(hi),
            v0=v0,
            v1=v1,
        )

    # ------------------------------------------------------------------
    # metric quantities

    def hilbert_distance(self, x, y):
        """Hilbert distance, half the log of the boundary cross ratio."""
        x = np.real(self.chart_point(x))
        y = np.real(self.chart_point(y))
        if not self.contains(x) or not self.contains(y):
            raise NotInteriorError("hilbert distance needs interior points")
        sep = np.linalg.norm(y - x)
        if sep < 1e-15:
            return 0.0
        direction = (y - x) / sep
        clip = self.line_clip((x, direction))
        if clip is None:
            raise DegenerateError("interior points produced an empty clip")
        a, b, t = clip.a, clip.b, sep
        value = ((a - t) * b) / (a * (b - t))
        return 0.5 * float(np.log(value))

    def finsler_norm(self, x, w):
        """Infinitesimal Hilbert norm of a chart tangent vector at x."""
        x = np.real(self.chart_point(x))
        w = np.asarray(w, dtype=np.float64).reshape(self.n)
        if not self.contains(x):
            raise NotInteriorError("finsler norm needs an interior base point")
        speed = np.linalg.norm(w)
        if speed == 0.0:
            return 0.0
        clip = self.line_clip((x, w / speed))
        return 0.5 * (1.0 / -clip.a + 1.0 / clip.b) * speed

    def cross_ratio_check(self, x, y):
        """Hilbert distance recomputed through the projective cross ratio
        of the actual boundary points (diagnostic second route)."""
        x = np.real(self.chart_point(x))
        y = np.real(self.chart_point(y))
        sep = np.linalg.norm(y - x)
        if sep < 1e-15:
            return 0.0
        clip = self.line_clip((x, (y - x) / sep))
        pa, pb = clip.endpoint_points()
        cr = cross_ratio(
            self.chart.hpoint(pa),
            self.chart.hpoint(x),
            self.chart.hpoint(y),
            self.chart.hpoint(pb),
        )
        return 0.5 * float(np.log(cr))

    # ------------------------------------------------------------------
    # constructions

    def scaled_copy(self, delta):
        """The domain shrunk by ``1 - delta`` about its reference point."""
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        s = 1.0 - delta
        ref = self.reference
        if isinstance(self.rep, VPolytope):
            verts = ref + s * (self._verts - ref)
            rep = VPolytope(tuple(self.chart.hpoint(v) for v in verts))
        elif isinstance(self.rep, HDomain):
            # x lands inside iff ref + (x - ref)/s satisfies the original row,
            # i.e. n.x + s c - (1 - s) n.ref > 0
            rows = self._rows.copy()
            normals, consts = rows[:, :-1], rows[:, -1]
            new_consts = s * consts - (1.0 - s) * (normals @ ref)
            chart_rows = np.column_stack([normals, new_consts])
            rep = HDomain(tuple(Functional(self.chart.matrix.T @ g) for g in chart_rows))
        else:
            rep = Ellipsoid(ref + s * (self._center - ref), self._shape / (s * s))
        return ConvexDomain(rep, chart=self.chart, reference_point=ref, name=self.name)

    def transform(self, amap):
        """Image domain under a projective map, kept in the same chart."""
        if isinstance(self.rep, VPolytope):
            rep = VPolytope(tuple(amap.apply(v) for v in self.rep.vertices))
        elif isinstance(self.rep, HDomain):
            inv = np.linalg.inv(amap.matrix)
            rep = HDomain(tuple(Functional(inv.T @ f.coeffs) for f in self.rep.functionals))
        else:
            raise DegenerateError("ellipsoid transforms are not supported")
        ref_lift = amap.matrix @ self.chart.lift(self.reference)
        ref = self.chart.to_chart(HPoint(ref_lift))
        return ConvexDomain(rep, chart=self.chart, reference_point=ref, name=self.name)

    def as_hdomain(self):
        """Equivalent H-domain built from the facet rows."""
        if isinstance(self.rep, HDomain):
            return self
        if self._rows is None:
            raise DegenerateError("an ellipsoid has no finite functional family")
        rep = HDomain(tuple(Functional(self.chart.matrix.T @ g) for g in self._rows))
        return ConvexDomain(
            rep, chart=self.chart, reference_point=self.reference, name=self.name
        )

    # ------------------------------------------------------------------
    # sampling and validation

    def sample_interior(self, rng, count):
        """Rejection-sample interior chart points; deterministic in rng."""
        lo, hi = self.bbox
        out = np.empty((count, self.n))
        got = 0
        while got < count:
            batch = rng.uniform(lo, hi, size=(max(count - got, 32) * 4, self.n))
            for p in batch:
                if self.contains(p):
                    out[got] = p
                    got += 1
                    if got == count:
                        break
        return out

    def validate(self):
        """Structural checks; returns a report rather than raising."""
        rep_name = type(self.rep).__name__.lower()
        report = VerifierReport(
            name="domain-validation", samples_run=0, tolerance=0.0, seed=0
        )
        report.details["representation"] = rep_name
        report.details["dimension"] = self.n
        try:
            if isinstance(self.rep, VPolytope):
                spread = self._verts - self._verts.mean(axis=0)
                if np.linalg.matrix_rank(spread, tol=1e-10) < self.n:
                    report.record("vertices do not affinely span the chart")
            if isinstance(self.rep, Ellipsoid):
                eigs = np.linalg.eigvalsh(self._shape)
                if eigs.min() <= 1e-12:
                    report.record("shape matrix is not positive definite")
            lo, hi = self.bbox
            if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
                report.record("domain is unbounded in its chart")
            if self.margin(self.reference) <= 0.0:
                report.record("reference point is not strictly interior")
        except ValidationError as exc:
            report.record(str(exc))
        except Exception as exc:  # pragma: no cover - defensive
            report.record(f"validation crashed: {exc}")
        return report

    def ensure_valid(self):
        report = self.validate()
        if not report.passed:
            raise ValidationError("; ".join(report.violations))
        return self

    def __repr__(self):
        label = self.name or type(self.rep).__name__
        return f"ConvexDomain({label}, n={self.n})"


def contains_barycentric(domain, x, tol=1e-12):
    """Strict hull membership through a strictly positive barycentric
    representation (linear program).  V-polytopes only; used as an
    independent route against the facet test."""
    from scipy.optimize import linprog

    if not isinstance(domain.rep, VPolytope):
        raise DegenerateError("barycentric membership needs a V-polytope")
    verts = domain._verts
    x = np.real(domain.chart_point(x))
    m = len(verts)
    # variables: lambda_1..m, t ; maximize t
    c = np.zeros(m + 1)
    c[-1] = -1.0
    a_eq = np.zeros((domain.n + 1, m + 1))
    a_eq[: domain.n, :m] = verts.T
    a_eq[domain.n, :m] = 1.0
    b_eq = np.append(x, 1.0)
    a_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
    b_ub = np.zeros(m)
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * m + [(None, 1.0)],
        method="highs",
    )
    if not res.success:
        return False
    return bool(-res.fun > tol)
