"""Group actions on tubes and their quotients.

A discrete group of projective transformations preserving a properly convex
domain acts on the tube over it.  For the quotient to be a manifold the
action must be free; fixed points of an element are eigenvectors of its
matrix, so freeness is checked by testing eigenvector classes for tube
membership over all short reduced words.  For a cyclic group generated by a
proximal element of RP^1 the quotient is an annulus and orbit reduction is
exact in the eigenbasis coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import ConvexDomain, Ellipsoid, HDomain, VPolytope
from .errors import (
    DegenerateError,
    GroupValidationError,
    InfinityError,
    UnsupportedConfigurationError,
)
from .projective import HPoint, ProjectiveMap, proj_eq
from .report import VerifierReport
from .tube import Tube

_PROJ_TOL = 1e-9


def _as_map(g) -> ProjectiveMap:
    return g if isinstance(g, ProjectiveMap) else ProjectiveMap(np.asarray(g, dtype=float))


def _preserves(domain: ConvexDomain, gmap: ProjectiveMap, tol=_PROJ_TOL) -> bool:
    """Whether a projective map sends the domain onto itself."""
    amat = gmap.matrix
    rep = domain.rep
    if isinstance(rep, VPolytope):
        images = [amat @ v.coords for v in rep.vertices]
        targets = [v.coords for v in rep.vertices]
        return _matches_setwise(images, targets, tol)
    if isinstance(rep, HDomain):
        inv_t = np.linalg.inv(amat).T
        images = [inv_t @ f.coeffs for f in rep.functionals]
        targets = [f.coeffs for f in rep.functionals]
        return _matches_setwise(images, targets, tol)
    if isinstance(rep, Ellipsoid):
        center, shape = domain.ellipsoid_data()
        n = domain.n
        q = np.zeros((n + 1, n + 1))
        q[:n, :n] = shape
        q[:n, n] = -shape @ center
        q[n, :n] = -shape @ center
        q[n, n] = center @ shape @ center - 1.0
        m = domain.chart.matrix
        q_orig = m.T @ q @ m
        inv = np.linalg.inv(amat)
        pulled = inv.T @ q_orig @ inv
        scale = np.trace(pulled @ q_orig) / np.trace(q_orig @ q_orig)
        if scale <= 0:
            return False
        return np.linalg.norm(pulled - scale * q_orig) <= tol * np.linalg.norm(q_orig) * abs(scale)
    return False


def _matches_setwise(images, targets, tol):
    used = set()
    for img in images:
        hit = None
        for idx, tgt in enumerate(targets):
            if idx in used:
                continue
            if proj_eq(img, tgt, tol):
                hit = idx
                break
        if hit is None:
            return False
        used.add(hit)
    return len(used) == len(targets)


class ConvexRPManifold:
    """A properly convex domain with a finite set of validated generators."""

    def __init__(self, domain: ConvexDomain, generators):
        self.domain = domain
        self.generators = tuple(_as_map(g) for g in generators)
        if not self.generators:
            raise GroupValidationError("at least one generator is required")
        for k, g in enumerate(self.generators):
            if g.matrix.shape != (domain.n + 1, domain.n + 1):
                raise GroupValidationError(f"generator {k} has wrong shape")
            if not _preserves(domain, g):
                raise GroupValidationError(f"generator {k} does not preserve the domain")
        self.tube = Tube(domain)

    def element(self, word):
        """The map of a word given as a sequence of indices; negative index
        -(k+1) denotes the inverse of generator k."""
        mat = np.eye(self.domain.n + 1)
        for letter in word:
            g = self.generators[letter] if letter >= 0 else self.generators[-letter - 1].inverse()
            mat = g.matrix @ mat
        return ProjectiveMap(mat)

    def reduced_words(self, max_length):
        """All nonempty reduced words up to the given length (no letter is
        immediately followed by its inverse)."""
        alphabet = []
        for k in range(len(self.generators)):
            alphabet.append(k)
            alphabet.append(-k - 1)
        words = []
        frontier = [()]
        for _ in range(max_length):
            nxt = []
            for word in frontier:
                for letter in alphabet:
                    # the inverse of letter L is -L-1 in this encoding
                    if word and word[-1] == -letter - 1:
                        continue
                    nxt.append(word + (letter,))
            words.extend(nxt)
            frontier = nxt
        return words


def check_free_action(manifold: ConvexRPManifold, word_length=8) -> VerifierReport:
    """Verify that no short reduced word fixes a point of the tube.

    Eigenvectors of each word's matrix are the fixed points of its action;
    any eigenvector class inside the tube is reported as a violation.  Words
    acting as the projective identity (relations between the generators,
    e.g. for commuting generators) are the trivial group element and carry
    no fixed-point information, so they are skipped and counted.
    """
    report = VerifierReport(
        name="free_action",
        tolerance=_PROJ_TOL,
        details={"word_length": word_length},
    )
    tube = manifold.tube
    words = manifold.reduced_words(word_length)
    identity_words = 0
    for word in words:
        gmap = manifold.element(word)
        report.samples_run += 1
        if gmap.is_identity(_PROJ_TOL):
            identity_words += 1
            report.skipped += 1
            continue
        eigvals, eigvecs = np.linalg.eig(gmap.matrix)
        for col in range(eigvecs.shape[1]):
            vec = eigvecs[:, col]
            try:
                point = HPoint(vec)
            except Exception:
                continue
            try:
                inside = tube.contains(point)
            except InfinityError:
                continue
            if inside:
                report.record(
                    f"word {word} fixes a tube point (eigenvalue {eigvals[col]:.6g})"
                )
                break
    report.details["words_checked"] = len(words)
    report.details["identity_words"] = identity_words
    return report


@dataclass(frozen=True)
class OrbitResult:
    """Standard-chart coordinate of an orbit representative, the group
    power or word that produced it, and the representative as a point."""

    coordinate: complex
    point: HPoint
    power: int = None
    word: tuple = None


def _proximal_frame(gmap: ProjectiveMap):
    """Eigenbasis (v_small, v_big) and ratio rho>1 of a proximal 2x2 map."""
    eigvals, eigvecs = np.linalg.eig(gmap.matrix)
    if np.abs(eigvals.imag).max() > 1e-12:
        return None
    eigvals = eigvals.real
    order = np.argsort(np.abs(eigvals))
    lo, hi = order[0], order[-1]
    if abs(eigvals[lo]) < 1e-300:
        return None
    rho = eigvals[hi] / eigvals[lo]
    if not np.isfinite(rho) or abs(rho) <= 1.0 + 1e-12:
        return None
    v = np.real_if_close(eigvecs[:, [lo, hi]])
    if np.iscomplexobj(v):
        return None
    return v.astype(float), float(rho)


def _standard_lift(z):
    if isinstance(z, HPoint):
        return z.coords.astype(np.complex128)
    z = complex(z)
    return np.array([z, 1.0], dtype=np.complex128)


def orbit_reduce(manifold: ConvexRPManifold, z, word_length=8) -> OrbitResult:
    """Reduce a point to a fundamental-domain representative.

    For a single proximal generator on one projective dimension the
    reduction is exact: in the eigenbasis coordinate tau the generator acts
    as tau -> rho tau and the representative satisfies 1 <= |tau| < rho.
    Otherwise a search over short words picks the image closest to the
    reference point in the chart.
    """
    n = manifold.domain.n
    if n == 1 and len(manifold.generators) == 1:
        frame = _proximal_frame(manifold.generators[0])
        if frame is not None:
            vmat, rho = frame
            lift = _standard_lift(z)
            alpha, beta = np.linalg.solve(vmat.astype(complex), lift)
            if abs(alpha) < 1e-300 or abs(beta) < 1e-300:
                raise DegenerateError("the point is fixed by the generator")
            tau = beta / alpha
            k = -int(np.floor(np.log(abs(tau)) / np.log(rho)))
            while abs(tau) * rho**k >= rho:
                k -= 1
            while abs(tau) * rho**k < 1.0:
                k += 1
            tau_rep = tau * rho**k
            rep_lift = vmat[:, 0].astype(complex) + tau_rep * vmat[:, 1].astype(complex)
            point = HPoint(rep_lift)
            coord = rep_lift[0] / rep_lift[1]
            if abs(coord.imag) < 1e-14 * max(1.0, abs(coord.real)):
                coord = complex(coord.real, 0.0)
            return OrbitResult(coordinate=coord, point=point, power=k)
    # generic fallback: scan images under short words
    lift = _standard_lift(z)
    chart = manifold.domain.chart
    ref = manifold.domain.reference
    best = None
    for word in [()] + manifold.reduced_words(word_length):
        mat = manifold.element(word).matrix
        moved = mat @ lift
        h = chart.infinity(moved)
        if abs(h) <= 1e-12 * np.linalg.norm(moved):
            continue
        zeta = chart.basis_values(moved) / h
        score = float(np.linalg.norm(zeta.real - ref) + np.linalg.norm(zeta.imag))
        if best is None or score < best[0] - 1e-15:
            best = (score, moved, word)
    if best is None:
        raise DegenerateError("no image of the point lies in the chart")
    _, moved, word = best
    point = HPoint(moved)
    coord = moved[0] / moved[-1]
    return OrbitResult(coordinate=complex(coord), point=point, word=word)


def quotient_distance_cyclic(manifold: ConvexRPManifold, z, w, word_length=8) -> float:
    """Distance in the quotient of a one-dimensional tube by a cyclic group:
    the minimum of tube distances d(z, g^k w) over powers |k| <= word_length.

    Coordinates are standard affine coordinates of the projective line (or
    points); the tube metric on a one-dimensional tube is the metric of its
    single slice disk.
    """
    if manifold.domain.n != 1 or len(manifold.generators) != 1:
        raise UnsupportedConfigurationError(
            "cyclic quotient distance needs one generator in dimension one"
        )
    tube = manifold.tube
    chart = manifold.domain.chart
    disk = tube.slice_on_line(np.atleast_1d(manifold.domain.reference), np.array([1.0]))
    amat = manifold.generators[0].matrix

    def chart_scalar(lift):
        h = chart.infinity(lift)
        if abs(h) <= 1e-14 * np.linalg.norm(lift):
            raise InfinityError("orbit point left the chart")
        return complex((chart.basis_values(lift) / h)[0])

    lift_z = _standard_lift(z)
    lift_w = _standard_lift(w)
    tau_z = disk.coord(np.atleast_1d(chart_scalar(lift_z)))
    best = np.inf
    for k in range(-word_length, word_length + 1):
        moved = np.linalg.matrix_power(amat, k).astype(complex) @ lift_w
        try:
            tau_wk = disk.coord(np.atleast_1d(chart_scalar(moved)))
            dist = disk.poincare(tau_z, tau_wk)
        except Exception:
            continue
        best = min(best, dist)
    if not np.isfinite(best):
        raise DegenerateError("no orbit image admitted a distance computation")
    return float(best)
