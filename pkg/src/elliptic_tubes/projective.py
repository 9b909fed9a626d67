"""Homogeneous-coordinate primitives for real and complex projective space.

Points and hyperplanes are stored as normalized lifts in K^(n+1) with K the
reals or complexes.  The last coordinate plays no special role here; charts
carry the affinization data.  Chart coordinates of a point x are written as
the n-vector obtained from the chart's basis functionals divided by its
hyperplane-at-infinity functional.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CollinearityError,
    DegenerateError,
    InfinityError,
    RealPointError,
)

# A complex lift counts as real when the second singular value of its
# stacked real/imaginary parts is below this factor times the first.
REALITY_TOL = 1e-9

_TINY = 1e-14


def normalize_lift(v):
    """Scale a lift to unit Euclidean norm with the first significant
    coordinate rotated onto the nonnegative real axis.

    Real input stays real (a sign flip); complex input is multiplied by a
    unit phase.  Raises ValueError on the zero vector.
    """
    v = np.asarray(v)
    if np.iscomplexobj(v):
        v = v.astype(np.complex128)
    else:
        v = v.astype(np.float64)
    norm = np.linalg.norm(v)
    if not norm > 0.0:
        raise ValueError("the zero vector has no projective class")
    v = v / norm
    mags = np.abs(v)
    lead = int(np.argmax(mags > _TINY * mags.max()))
    pivot = v[lead]
    if np.iscomplexobj(v):
        v = v * (pivot.conjugate() / abs(pivot))
        # kill the rounding dust in the pivot's imaginary part
        v[lead] = v[lead].real
    elif pivot < 0.0:
        v = -v
    return v


class HPoint:
    """A point of RP^n or CP^n held as a normalized lift."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        lift = normalize_lift(coords)
        lift.setflags(write=False)
        object.__setattr__(self, "coords", lift)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("HPoint is immutable")

    @property
    def dim(self):
        """Dimension n of the ambient projective space."""
        return len(self.coords) - 1

    @property
    def is_complex(self):
        return np.iscomplexobj(self.coords)

    def conj(self):
        """The complex-conjugate point."""
        if not self.is_complex:
            return self
        return HPoint(np.conj(self.coords))

    def proj_eq(self, other, tol=1e-9):
        return proj_eq(self, other, tol=tol)

    def __repr__(self):
        return f"HPoint({np.array2string(self.coords, precision=6)})"


class Functional:
    """A projective hyperplane: a normalized covector acting on lifts."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        lift = normalize_lift(coeffs)
        lift.setflags(write=False)
        object.__setattr__(self, "coeffs", lift)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Functional is immutable")

    @property
    def dim(self):
        return len(self.coeffs) - 1

    @property
    def is_complex(self):
        return np.iscomplexobj(self.coeffs)

    def __call__(self, point):
        """Bilinear pairing with a point lift (no conjugation)."""
        if isinstance(point, HPoint):
            return self.coeffs @ point.coords
        return self.coeffs @ np.asarray(point)

    def conj(self):
        if not self.is_complex:
            return self
        return Functional(np.conj(self.coeffs))

    def proj_eq(self, other, tol=1e-9):
        return proj_eq(self, other, tol=tol)

    def __repr__(self):
        return f"Functional({np.array2string(self.coeffs, precision=6)})"


def _lift_of(obj):
    if isinstance(obj, HPoint):
        return obj.coords
    if isinstance(obj, Functional):
        return obj.coeffs
    return normalize_lift(obj)


def proj_eq(a, b, tol=1e-9):
    """Whether two lifts span the same projective class.

    Decided by the second singular value of the stacked 2 x (n+1) matrix
    relative to the first.
    """
    stack = np.vstack([_lift_of(a), _lift_of(b)]).astype(np.complex128)
    sv = np.linalg.svd(stack, compute_uv=False)
    return sv[1] <= tol * sv[0]


def _best_phase(lift):
    """Unit phase e^{-i phi} minimizing the imaginary part of the lift."""
    s = lift @ lift  # plain transpose product, no conjugation
    if abs(s) < _TINY:
        return 1.0
    return np.exp(-0.5j * np.angle(s))


def is_real(z, tol=REALITY_TOL):
    """Decide whether a point of CP^n is real.

    Returns ``(flag, real_rep)`` where ``real_rep`` is the real HPoint when
    the flag is true (the lift after the phase rotation that minimizes its
    imaginary part) and None otherwise.
    """
    lift = _lift_of(z)
    if not np.iscomplexobj(lift):
        return True, z if isinstance(z, HPoint) else HPoint(lift)
    stack = np.vstack([lift.real, lift.imag])
    sv = np.linalg.svd(stack, compute_uv=False)
    if sv[1] <= tol * sv[0]:
        rotated = lift * _best_phase(lift)
        return True, HPoint(rotated.real)
    return False, None


class RealLine:
    """A real projective line given by two independent real points.

    The span basis is remembered: line coordinates produced by
    :func:`line_chart` refer to it.
    """

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        u = u if isinstance(u, HPoint) else HPoint(u)
        v = v if isinstance(v, HPoint) else HPoint(v)
        if u.is_complex or v.is_complex:
            raise ValueError("a RealLine needs real span points")
        stack = np.vstack([u.coords, v.coords])
        sv = np.linalg.svd(stack, compute_uv=False)
        if sv[1] <= 1e-12 * sv[0]:
            raise DegenerateError("span points coincide projectively")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("RealLine is immutable")

    @property
    def dim(self):
        return self.u.dim

    def span(self):
        """2 x (n+1) matrix whose rows span the line's lifts."""
        return np.vstack([self.u.coords, self.v.coords])

    def contains(self, z, tol=1e-9):
        """Whether a (possibly complex) point lies on the complexified line."""
        lift = _lift_of(z).astype(np.complex128)
        stack = np.vstack([self.span().astype(np.complex128), lift])
        sv = np.linalg.svd(stack, compute_uv=False)
        return sv[2] <= tol * sv[0]

    def proj_eq(self, other, tol=1e-9):
        """Whether two lines agree as projective subspaces."""
        stack = np.vstack([self.span(), other.span()])
        sv = np.linalg.svd(stack, compute_uv=False)
        return sv[2] <= tol * sv[0]

    def chart_form(self, chart):
        """Affine parametrization ``t -> x0 + t * direction`` in a chart.

        ``x0`` is the chart image of whichever span point sits deeper inside
        the chart; ``direction`` is the unit chart vector toward the line's
        point on the chart's hyperplane at infinity.  Deterministic for a
        fixed span basis.
        """
        hu = chart.infinity(self.u.coords)
        hv = chart.infinity(self.v.coords)
        w = hv * self.u.coords - hu * self.v.coords  # the point at infinity
        w = normalize_lift(w)
        direction = chart.basis_values(w)
        dn = np.linalg.norm(direction)
        if not dn > 0.0:
            raise DegenerateError("line collapses in this chart")
        direction = direction / dn
        base = self.u if abs(hu) >= abs(hv) else self.v
        x0 = chart.to_chart(base)
        return x0, direction

    def __repr__(self):
        return f"RealLine(u={self.u!r}, v={self.v!r})"


class Chart:
    """An affine chart: n basis functionals plus a hyperplane at infinity.

    Chart coordinates of a lift p are ``basis_i(p) / infinity(p)``.
    """

    __slots__ = ("matrix", "inverse", "n")

    def __init__(self, basis, infinity):
        rows = [(_lift_of(b)) for b in basis]
        rows.append(_lift_of(infinity))
        matrix = np.vstack(rows).astype(np.float64)
        n = matrix.shape[1] - 1
        if matrix.shape[0] != n + 1:
            raise ValueError("a chart on RP^n needs n basis functionals")
        if abs(np.linalg.det(matrix)) < 1e-12:
            raise ValueError("chart functionals must be linearly independent")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "inverse", np.linalg.inv(matrix))
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Chart is immutable")

    @classmethod
    def standard(cls, n):
        """Last homogeneous coordinate is the homogenizer."""
        eye = np.eye(n + 1)
        return cls(eye[:-1], eye[-1])

    @property
    def is_standard(self):
        return bool(np.allclose(self.matrix, np.eye(self.n + 1)))

    def infinity(self, lift):
        return self.matrix[-1] @ np.asarray(lift)

    def basis_values(self, lift):
        return self.matrix[:-1] @ np.asarray(lift)

    def to_chart(self, p, tol=1e-12):
        """Chart coordinates of a point; InfinityError on the chart's
        hyperplane at infinity."""
        lift = _lift_of(p)
        h = self.infinity(lift)
        scale = np.linalg.norm(self.matrix[-1]) * np.linalg.norm(lift)
        if abs(h) <= tol * scale:
            raise InfinityError("point lies at infinity in this chart")
        return self.basis_values(lift) / h

    def lift(self, x):
        """Raw (unnormalized) lift of chart coordinates."""
        x = np.asarray(x)
        return self.inverse @ np.append(x, 1.0)

    def direction_lift(self, w):
        """Lift of a chart direction (a point on the hyperplane at infinity)."""
        w = np.asarray(w)
        return self.inverse @ np.append(w, 0.0)

    def hpoint(self, x):
        return HPoint(self.lift(x))

    def __repr__(self):
        return f"Chart(n={self.n}, standard={self.is_standard})"


class ProjectiveMap:
    """An invertible projective transformation stored as its matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("a projective map needs a square matrix")
        if abs(np.linalg.det(matrix)) < 1e-12:
            raise DegenerateError("projective map must be invertible")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ProjectiveMap is immutable")

    @property
    def dim(self):
        return self.matrix.shape[0] - 1

    def apply(self, p):
        lift = _lift_of(p)
        return HPoint(self.matrix @ lift)

    def apply_lift(self, lift):
        return self.matrix @ np.asarray(lift)

    def inverse(self):
        return ProjectiveMap(np.linalg.inv(self.matrix))

    def compose(self, other):
        return ProjectiveMap(self.matrix @ other.matrix)

    def __matmul__(self, other):
        if isinstance(other, ProjectiveMap):
            return self.compose(other)
        return NotImplemented

    def proj_eq(self, other, tol=1e-9):
        a = self.matrix.ravel()
        b = other.matrix.ravel()
        stack = np.vstack([a / np.linalg.norm(a), b / np.linalg.norm(b)])
        sv = np.linalg.svd(stack, compute_uv=False)
        return sv[1] <= tol * sv[0]

    def is_identity(self, tol=1e-9):
        return self.proj_eq(ProjectiveMap(np.eye(self.matrix.shape[0])), tol=tol)

    def __repr__(self):
        return f"ProjectiveMap({np.array2string(self.matrix, precision=6)})"


def real_trace_line(z, tol=REALITY_TOL):
    """The unique real line whose complexification carries a non-real point.

    The lift is phase-rotated to make its real and imaginary parts
    orthogonal; those two real vectors span the line.
    """
    flag, _ = is_real(z, tol=tol)
    if flag:
        raise RealPointError("real points lie on infinitely many real lines")
    lift = _lift_of(z).astype(np.complex128)
    rotated = lift * _best_phase(lift)
    return RealLine(HPoint(rotated.real), HPoint(rotated.imag))


def cross_ratio(a, x, y, b, tol=1e-9):
    """Cross ratio of four collinear points.

    In an affine line coordinate t the value is
    ``((t_a - t_y) (t_b - t_x)) / ((t_a - t_x) (t_b - t_y))``,
    evaluated here through 2 x 2 determinants of lift coordinates in an
    orthonormal basis of the common span, which makes it basis and scale
    independent.
    """
    lifts = np.vstack([_lift_of(p).astype(np.complex128) for p in (a, x, y, b)])
    u, sv, vh = np.linalg.svd(lifts)
    if lifts.shape[1] > 2 and sv[2] > tol * sv[0]:
        raise CollinearityError("cross ratio needs four collinear points")
    coords = lifts @ vh[:2].conj().T  # 4 x 2 coordinates in the span basis

    def det(i, j):
        return coords[i, 0] * coords[j, 1] - coords[i, 1] * coords[j, 0]

    num = det(0, 2) * det(3, 1)
    den = det(0, 1) * det(3, 2)
    scale = np.max(np.abs(coords)) ** 4
    if abs(den) <= 1e-14 * scale or abs(num) <= 1e-14 * scale:
        raise DegenerateError("cross ratio degenerates (coincident points)")
    value = num / den
    if abs(value.imag) <= 1e-9 * abs(value):
        return float(value.real)
    return complex(value)


def line_chart(line, tol=1e-9):
    """Coordinate functions along a line's span basis.

    Returns ``(to_line, from_line)``: ``to_line`` sends a point
    ``pi(u + tau v)`` of the (complexified) line to ``tau`` (``inf`` for the
    class of v), ``from_line`` is its inverse.
    """
    span = line.span().astype(np.complex128)

    def to_line(p):
        lift = _lift_of(p).astype(np.complex128)
        sol, res, rank, sv = np.linalg.lstsq(span.T, lift, rcond=None)
        recon = span.T @ sol
        if np.linalg.norm(recon - lift) > tol * np.linalg.norm(lift):
            raise CollinearityError("point is not on the line")
        alpha, beta = sol
        if abs(alpha) <= 1e-12 * abs(beta):
            return np.inf
        tau = beta / alpha
        if abs(tau.imag) <= 1e-12 * (1.0 + abs(tau)):
            return float(tau.real)
        return complex(tau)

    def from_line(tau):
        if np.isinf(tau):
            return line.v
        if isinstance(tau, complex):
            lift = line.u.coords.astype(np.complex128) + tau * line.v.coords
        else:
            lift = line.u.coords + float(tau) * line.v.coords
        return HPoint(lift)

    return to_line, from_line


def pushforward(amap, chart, x, w):
    """Derivative of a projective map in chart coordinates.

    Differentiates ``x -> chart(A . lift(x))`` at the chart point ``x`` in
    the direction ``w``.  Both ``x`` and its image must be finite in the
    chart.
    """
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    y_lift = amap.matrix @ chart.lift(x)
    h = chart.infinity(y_lift)
    scale = np.linalg.norm(y_lift) * np.linalg.norm(chart.matrix[-1])
    if abs(h) <= 1e-12 * scale:
        raise InfinityError("image point lies at infinity in this chart")
    y_chart = chart.basis_values(y_lift) / h
    dy_lift = amap.matrix @ chart.direction_lift(w)
    return (chart.basis_values(dy_lift) - y_chart * chart.infinity(dy_lift)) / h
