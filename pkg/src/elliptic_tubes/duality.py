"""Projective duality for convex domains and their tubes.

The dual complement of a set E consists of the hyperplanes missing E.  For
a properly convex domain it is again properly convex, bounded in the chart
whose hyperplane at infinity is the evaluation at the reference point, and
swapping vertices and functionals realizes it concretely for polytopes.
Tube membership dualizes as well: a point outside the tube is annihilated
by an explicit member of the dual tube (the constructive separator).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domains import ConvexDomain, Ellipsoid, HDomain, VPolytope
from .errors import (
    DegenerateError,
    InsideTubeError,
    NotBoundaryError,
    RepresentationError,
)
from .projective import Chart, Functional, HPoint
from .tube import COMPLEX_BOUNDARY, REAL_BOUNDARY, Tube

_CLOSED_SLACK = 1e-12


def annihilator(x):
    """The hyperplane of the dual space consisting of functionals that
    vanish at x (represented by x's own lift acting on dual vectors)."""
    x = x if isinstance(x, HPoint) else HPoint(x)
    return Functional(x.coords)


def dual_chart(domain: ConvexDomain) -> Chart:
    """The chart of the dual space adapted to a domain: hyperplane at
    infinity is evaluation at the reference lift, the basis rows are
    evaluations at the chart's coordinate directions."""
    basis = [domain.chart.direction_lift(e) for e in np.eye(domain.n)]
    infinity = domain.chart.lift(domain.reference)
    return Chart(basis, infinity)


@dataclass(frozen=True)
class DualDomain:
    """A dual complement together with its primal domain."""

    domain: ConvexDomain
    primal: ConvexDomain


def dual_complement(domain: ConvexDomain) -> DualDomain:
    """Dual complement of a V-polytope: the H-domain in the dual space whose
    functionals are the vertex lifts (chart-infinity component one)."""
    if not isinstance(domain.rep, VPolytope):
        raise RepresentationError("dual_complement expects a V-polytope")
    chart = dual_chart(domain)
    lifts = [domain.chart.lift(v) for v in domain._verts]
    rep = HDomain(tuple(Functional(lift) for lift in lifts))
    reference = chart.to_chart(HPoint(domain.chart.matrix[-1]))
    dual = ConvexDomain(rep, chart=chart, reference_point=reference)
    return DualDomain(domain=dual, primal=domain)


def _prune_redundant_rows(rows, box, tol=1e-9):
    """Indices of rows that actually support the region {g . (x,1) > 0}.

    A strict-interior feasibility test per row: the row is redundant when no
    point satisfies all the others strictly while violating it strictly.
    """
    from scipy.optimize import linprog

    n = rows.shape[1] - 1
    lo, hi = box
    keep = []
    for k in range(len(rows)):
        # variables (x, t); maximize t
        a_ub = []
        b_ub = []
        for j in range(len(rows)):
            if j == k:
                continue
            a_ub.append(np.append(-rows[j, :n], 1.0))
            b_ub.append(rows[j, n])
        a_ub.append(np.append(rows[k, :n], 1.0))
        b_ub.append(-rows[k, n])
        bounds = [(lo[i] - 1.0, hi[i] + 1.0) for i in range(n)] + [(None, 1.0)]
        c = np.zeros(n + 1)
        c[-1] = -1.0
        res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub), bounds=bounds, method="highs")
        if res.success and -res.fun > tol:
            keep.append(k)
    return keep


def dual_complement_h(domain: ConvexDomain) -> DualDomain:
    """Dual complement of an H-domain: the V-polytope in the dual space
    whose vertices are the irredundant functionals."""
    if not isinstance(domain.rep, HDomain):
        raise RepresentationError("dual_complement_h expects an H-domain")
    chart = dual_chart(domain)
    rows = domain.rows()
    keep = _prune_redundant_rows(rows, domain.bbox)
    if len(keep) < domain.n + 1:
        raise DegenerateError("too few supporting functionals after pruning")
    lifts = [domain.chart.matrix.T @ rows[k] for k in keep]
    rep = VPolytope(tuple(HPoint(lift) for lift in lifts))
    reference = chart.to_chart(HPoint(domain.chart.matrix[-1]))
    dual = ConvexDomain(rep, chart=chart, reference_point=reference)
    return DualDomain(domain=dual, primal=domain)


def dual_complement_ellipsoid(domain: ConvexDomain) -> DualDomain:
    """Dual complement of an ellipsoid through polarity of its boundary
    quadric: again an ellipsoid, in the dual chart."""
    if not isinstance(domain.rep, Ellipsoid):
        raise RepresentationError("dual_complement_ellipsoid expects an ellipsoid")
    center, shape = domain.ellipsoid_data()
    n = domain.n
    q_chart = np.zeros((n + 1, n + 1))
    q_chart[:n, :n] = shape
    q_chart[:n, n] = -shape @ center
    q_chart[n, :n] = -shape @ center
    q_chart[n, n] = center @ shape @ center - 1.0
    m = domain.chart.matrix
    q_orig = m.T @ q_chart @ m
    nmat = np.linalg.inv(q_orig)
    chart = dual_chart(domain)
    w = chart.inverse.T @ nmat @ chart.inverse
    a = w[:n, :n]
    b = w[:n, n]
    d = w[n, n]
    eigs = np.linalg.eigvalsh(a)
    if eigs.min() <= 0.0:
        raise DegenerateError("dual quadric is not an ellipsoid in this chart")
    c_dual = -np.linalg.solve(a, b)
    rho = b @ np.linalg.solve(a, b) - d
    if rho <= 0.0:
        raise DegenerateError("dual quadric has empty interior")
    rep = Ellipsoid(c_dual, a / rho)
    dual = ConvexDomain(rep, chart=chart, reference_point=c_dual)
    return DualDomain(domain=dual, primal=domain)


def dual_of(domain: ConvexDomain) -> DualDomain:
    """Dual complement for any supported representation."""
    if isinstance(domain.rep, VPolytope):
        return dual_complement(domain)
    if isinstance(domain.rep, HDomain):
        return dual_complement_h(domain)
    return dual_complement_ellipsoid(domain)


def dual_tube(domain: ConvexDomain):
    """The tube over the dual complement, with the DualDomain record."""
    dual = dual_of(domain)
    return Tube(dual.domain), dual


def tube_separator(domain: ConvexDomain, z):
    """A dual-tube functional vanishing at a point outside the tube.

    The base must be an H-domain.  The first (lexicographic) pair f, g with
    ``Re(f(z) conj(g(z))) <= 0`` yields ``xi = g(z) f - f(z) g``; its kernel
    passes through z exactly, and it lies in the closed dual tube.
    """
    if not isinstance(domain.rep, HDomain):
        raise RepresentationError("tube_separator expects an H-domain base")
    tube = Tube(domain)
    if isinstance(z, HPoint):
        lift = z.coords.astype(np.complex128)
    else:
        zeta = tube.chart_complex(z)
        lift = domain.chart.inverse @ np.append(zeta, 1.0)
    # raw pulled-back rows keep the positive-on-the-cone sign convention
    # (Functional would re-normalize the leading coefficient)
    fam = domain.rows() @ domain.chart.matrix
    vals = fam @ lift
    gram = np.real(np.outer(vals, np.conj(vals)))
    m = len(fam)
    for i in range(m):
        for j in range(i, m):
            if gram[i, j] <= 0.0:
                if i == j or (abs(vals[i]) < 1e-15 and abs(vals[j]) < 1e-15):
                    return Functional(fam[i])
                xi = vals[j] * fam[i] - vals[i] * fam[j]
                return Functional(xi)
    raise InsideTubeError("the point lies inside the tube; no separator exists")


@dataclass
class TangentFunctionalSample:
    """Functionals through a tube boundary point whose kernels miss the tube."""

    members: list = field(default_factory=list)
    coords: np.ndarray = None
    diameter: float = 0.0
    starts: int = 0
    converged: int = 0

    @property
    def is_empty(self):
        return not self.members


def tangent_set_sample(domain: ConvexDomain, a, n_samples=200, seed=0):
    """Sample the tangent set of a tube boundary point.

    Searches the annihilator of ``a`` for members of the closed dual tube by
    clamped multistart minimization of the membership defect.  Returns the
    found functionals, their dual-chart coordinates and the chart diameter
    of the found set (small diameter indicates a single supporting
    hyperplane, large diameter a corner).
    """
    from scipy.linalg import null_space
    from scipy.optimize import minimize

    tube = Tube(domain)
    a_point = a if isinstance(a, HPoint) else tube.hpoint(np.asarray(a, dtype=complex))
    cls = tube.boundary_classify(a_point, band=1e-6)
    if cls not in (REAL_BOUNDARY, COMPLEX_BOUNDARY):
        raise NotBoundaryError(f"tangent sets exist only on the boundary (got {cls})")
    dual_t, dual = dual_tube(domain)
    dchart = dual_t.chart

    lift = a_point.coords.astype(np.complex128)
    basis = null_space(lift[None, :])  # (n+1, n) orthonormal columns
    if basis.shape[1] < 1:
        raise DegenerateError("annihilator parametrization failed")

    def chart_of(xi):
        h = dchart.infinity(xi)
        if abs(h) <= 1e-12 * np.linalg.norm(xi):
            return None
        return dchart.basis_values(xi) / h

    def defect(xi):
        eta = chart_of(xi)
        if eta is None:
            return 1.0
        return dual_t.violation(eta)

    def make_objective(b0, b1):
        def func(mu):
            xi = b0 + (mu[0] + 1j * mu[1]) * b1
            return max(defect(xi), 0.0)

        return func

    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    members = []
    coords = []
    converged = 0
    if basis.shape[1] == 1:
        # one projective dimension: the annihilator is a single functional
        xi = basis[:, 0]
        sample = TangentFunctionalSample(starts=1)
        if defect(xi) <= _CLOSED_SLACK:
            eta = chart_of(xi)
            sample.members = [Functional(xi)]
            sample.coords = np.array([np.concatenate([eta.real, eta.imag])])
            sample.converged = 1
        else:
            sample.coords = np.empty((0, 2 * domain.n))
        return sample
    pairings = [(basis[:, 0], basis[:, 1]), (basis[:, 1], basis[:, 0])]
    if basis.shape[1] > 2:
        for k in range(2, basis.shape[1]):
            pairings.append((basis[:, 0], basis[:, k]))
            pairings.append((basis[:, k], basis[:, 0]))
    for start in range(n_samples):
        b0, b1 = pairings[start % len(pairings)]
        mu0 = rng.normal(0.0, 2.0, size=2)
        func = make_objective(b0, b1)
        res = minimize(
            func,
            mu0,
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-18, "maxiter": 2000},
        )
        xi = b0 + (res.x[0] + 1j * res.x[1]) * b1
        value = defect(xi)
        if value <= _CLOSED_SLACK:
            converged += 1
            eta = chart_of(xi)
            members.append(Functional(xi))
            coords.append(np.concatenate([eta.real, eta.imag]))
    sample = TangentFunctionalSample(
        members=members,
        coords=np.array(coords) if coords else np.empty((0, 2 * domain.n)),
        starts=n_samples,
        converged=converged,
    )
    if len(coords) >= 2:
        pts = sample.coords
        diff = pts[:, None, :] - pts[None, :, :]
        sample.diameter = float(np.sqrt((diff**2).sum(axis=2)).max())
    return sample


def closed_dual_membership(domain: ConvexDomain, xi, slack=_CLOSED_SLACK):
    """Whether a functional lies in the closed dual tube (with slack)."""
    dual_t, _ = dual_tube(domain)
    coeffs = xi.coeffs if isinstance(xi, Functional) else np.asarray(xi)
    chart = dual_t.chart
    h = chart.infinity(coeffs)
    if abs(h) <= 1e-12 * np.linalg.norm(coeffs):
        return False
    eta = chart.basis_values(coeffs) / h
    return dual_t.violation(eta) <= slack
