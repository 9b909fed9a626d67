"""Sampling verifiers for the geometric claims about tubes.

Each verifier draws a deterministic sample (seeded generator), checks one
claim against an independent computational route, and returns a
VerifierReport; a report passes exactly when no violation was recorded.
Negative controls are built in where the claim has a natural sabotage
(a punctured raster for the slice-topology check, a wrong sign in the
separator combination for linear convexity).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.linalg import null_space

from . import _kernels
from .domains import ConvexDomain, HDomain
from .duality import dual_tube, tube_separator
from .errors import RepresentationError, ZeroDirectionError
from .projective import Functional, HPoint, pushforward
from .quotients import _preserves
from .report import VerifierReport
from .tangent import TangentVector, from_tangent, to_tangent
from .tube import Tube

_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])
_EIGHT = np.ones((3, 3), dtype=int)


# ----------------------------------------------------------------------
# complex-line rasters


@dataclass
class SliceRaster:
    """A membership bitmap over a complex line ``z(w) = anchor + w dir``."""

    bitmap: np.ndarray
    w_re: np.ndarray
    w_im: np.ndarray
    anchor: np.ndarray
    direction: np.ndarray
    window: tuple
    backend: str = field(default_factory=_kernels.backend)

    @property
    def resolution(self):
        return self.bitmap.shape

    @property
    def filled(self):
        return int(self.bitmap.sum())

    @property
    def touches_frame(self):
        b = self.bitmap
        return bool(b[0, :].any() or b[-1, :].any() or b[:, 0].any() or b[:, -1].any())

    def point(self, w):
        return self.anchor + w * self.direction


def _auto_window(tube: Tube, anchor, direction, margin):
    """A square window certain to contain the whole slice region.

    Every tube point is coordinate-bounded; solving ``|anchor_j + w dir_j|
    <= bound_j`` for the best coordinate gives ``|w| <= W``.
    """
    lo, hi, im_half = tube.bounding_box()
    bound = np.maximum(np.abs(lo), np.abs(hi)) + im_half
    scale = np.linalg.norm(direction)
    best = np.inf
    for j in range(tube.n):
        dj = abs(direction[j])
        if dj > 1e-12 * scale:
            best = min(best, (abs(anchor[j]) + bound[j]) / dj)
    if not np.isfinite(best):
        raise ZeroDirectionError("direction vanishes in every coordinate")
    w = margin * best
    return ((-w, w), (-w, w))


def _content_window(tube: Tube, anchor, direction, margin=1.1,
                    probe_resolution=256, pad=3, rounds=2):
    """Window fitted to the slice content of a complex line.

    The conservative window is certain to contain the region but can leave
    a thin slice only a handful of pixels wide, and pixel-level topology is
    meaningless at that scale.  Probing coarsely and refitting the frame to
    the detected content (padded by a few probe pixels) keeps rasters well
    conditioned at any resolution.  Falls back to the conservative window
    when the probe sees nothing.
    """
    window = _auto_window(tube, anchor, direction, margin)
    for _ in range(rounds):
        probe = rasterize_line(tube, anchor, direction,
                               resolution=probe_resolution, window=window)
        filled_rows = np.nonzero(probe.bitmap.any(axis=1))[0]
        filled_cols = np.nonzero(probe.bitmap.any(axis=0))[0]
        if len(filled_rows) == 0:
            return window
        (re_lo, re_hi), (im_lo, im_hi) = window
        d_re = (re_hi - re_lo) / probe_resolution
        d_im = (im_hi - im_lo) / probe_resolution
        window = (
            (re_lo + (filled_cols[0] - pad) * d_re,
             re_lo + (filled_cols[-1] + 1 + pad) * d_re),
            (im_lo + (filled_rows[0] - pad) * d_im,
             im_lo + (filled_rows[-1] + 1 + pad) * d_im),
        )
    return window


def rasterize_line(tube: Tube, anchor, direction, resolution=512, window=None,
                   margin=1.1, puncture=None) -> SliceRaster:
    """Rasterize tube membership over a complex line in chart coordinates.

    The grid samples cell centers.  With the default window no tube point
    can fall outside the frame, so the slice region is rendered completely.
    An optional puncture (center, radius) zeroes every pixel whose point is
    within the given chart distance of the center; it exists as a negative
    control for the topology checks.
    """
    anchor = np.asarray(anchor, dtype=np.complex128).reshape(tube.n)
    direction = np.asarray(direction, dtype=np.complex128).reshape(tube.n)
    if not np.linalg.norm(direction) > 0.0:
        raise ZeroDirectionError("direction must be nonzero")
    if window is None:
        window = _auto_window(tube, anchor, direction, margin)
    (re_lo, re_hi), (im_lo, im_hi) = window
    res = int(resolution)
    d_re = (re_hi - re_lo) / res
    d_im = (im_hi - im_lo) / res
    w_re = re_lo + (np.arange(res) + 0.5) * d_re
    w_im = im_lo + (np.arange(res) + 0.5) * d_im

    if tube.base._rows is not None:
        rows = tube.base.rows()
        fam_a = rows @ np.append(anchor, 1.0)
        fam_b = rows @ np.append(direction, 0.0)
        bitmap = _kernels.pairwise_bitmap(fam_a, fam_b, w_re, w_im)
    else:
        center, shape = tube.base.ellipsoid_data()
        aff_a = np.append(anchor, 1.0)
        aff_b = np.append(direction, 0.0)
        bitmap = _kernels.ellipsoid_bitmap(center, shape, aff_a, aff_b, w_re, w_im)

    if puncture is not None:
        p_center, p_radius = puncture
        p_center = np.asarray(p_center, dtype=np.complex128).reshape(tube.n)
        w = w_re[None, :] + 1j * w_im[:, None]
        dist2 = np.zeros(w.shape)
        for j in range(tube.n):
            dist2 += np.abs(anchor[j] + w * direction[j] - p_center[j]) ** 2
        bitmap = bitmap & (dist2 > p_radius * p_radius).astype(np.uint8)

    return SliceRaster(
        bitmap=bitmap,
        w_re=w_re,
        w_im=w_im,
        anchor=anchor,
        direction=direction,
        window=window,
    )


def connectivity_counts(bitmap):
    """(region components, complement components) of a bitmap.

    The region uses 4-connectivity and the complement 8-connectivity (the
    standard pairing that avoids digital topology paradoxes); the
    complement is padded with an outer frame so the unbounded part counts
    once.
    """
    _, n_region = ndimage.label(bitmap, structure=_FOUR)
    comp = np.pad(1 - bitmap, 1, constant_values=1)
    _, n_comp = ndimage.label(comp, structure=_EIGHT)
    return int(n_region), int(n_comp)


# ----------------------------------------------------------------------
# linear convexity (separators)


def _first_violating_pair(domain: ConvexDomain, lift):
    # sign-correct raw rows in homogeneous coordinates (see tube_separator)
    fam = domain.rows() @ domain.chart.matrix
    vals = fam @ lift
    gram = np.real(np.outer(vals, np.conj(vals)))
    m = len(fam)
    for i in range(m):
        for j in range(i, m):
            if gram[i, j] <= 0.0:
                return i, j, vals, fam
    return None


def verify_linear_convexity(domain: ConvexDomain, n_points=100, n_kernel_samples=1000,
                            seed=0, tol=1e-10, variant="difference") -> VerifierReport:
    """Every exterior point is annihilated by a hyperplane missing the tube.

    For sampled exterior points the constructive separator must vanish at
    the point (relative to its scale) and its kernel, sampled densely, must
    avoid the open tube.  ``variant='sum'`` flips the combination sign and
    serves as the negative control: the resulting functional has no reason
    to vanish at the point.
    """
    if not isinstance(domain.rep, HDomain):
        domain = domain.as_hdomain()
    tube = Tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="linear_convexity",
        tolerance=tol,
        seed=seed,
        details={"variant": variant, "points": n_points},
    )
    witnesses = tube.sample_points(rng, 64)
    per_point = max(1, n_kernel_samples // n_points)
    kernel_tested = 0
    for k in range(n_points):
        z = tube.sample_exterior(rng, 1)[0]
        lift = domain.chart.inverse @ np.append(z, 1.0)
        if variant == "difference":
            xi = tube_separator(domain, z)
        else:
            found = _first_violating_pair(domain, lift)
            if found is None:
                report.skipped += 1
                continue
            i, j, vals, fam = found
            xi_coeffs = vals[j] * fam[i] + vals[i] * fam[j]
            if np.linalg.norm(xi_coeffs) < 1e-14:
                xi = Functional(fam[i])
            else:
                xi = Functional(xi_coeffs)
        report.samples_run += 1
        value = abs(xi(lift)) / (np.linalg.norm(xi.coeffs) * np.linalg.norm(lift))
        report.observe(value)
        if value >= tol:
            report.record(f"separator fails to vanish at {z} (|xi(z)| rel {value:.3e})", value)
            continue
        # the kernel must miss the open tube: sampled kernel points stay out
        basis = null_space(xi.coeffs[None, :])
        hits = 0
        for _ in range(per_point):
            coeff = rng.normal(size=basis.shape[1]) + 1j * rng.normal(size=basis.shape[1])
            point = HPoint(basis @ coeff)
            kernel_tested += 1
            if tube.contains(point):
                hits += 1
        if hits:
            report.record(f"kernel of the separator at {z} meets the tube ({hits} hits)")
        # and the tube witnesses must not lie on the kernel
        wit_lifts = np.column_stack(
            [domain.chart.inverse @ np.append(wz, 1.0) for wz in witnesses]
        )
        wit_vals = np.abs(xi.coeffs @ wit_lifts) / (
            np.linalg.norm(xi.coeffs) * np.linalg.norm(wit_lifts, axis=0)
        )
        if wit_vals.min() <= tol:
            report.record(f"separator at {z} nearly vanishes on a tube point")
    report.details["kernel_samples"] = kernel_tested
    return report


# ----------------------------------------------------------------------
# slice topology (C-convexity)


def verify_c_convexity(domain: ConvexDomain, n_lines=24, resolution=512,
                       stability_factor=2, seed=0, puncture=None) -> VerifierReport:
    """Slices along complex lines are connected and simply connected.

    Rasterizes random complex lines through the tube and counts connected
    components of the region (must be 1) and of the complement (must be 1,
    so the region has no holes).  Each verdict is recomputed at a finer
    resolution and must not change.  A puncture turns this into its own
    negative control: the punctured region has a hole and must fail.

    Cusp-shaped regions can shed an isolated pixel at any resolution (the
    throat behind the cusp tip drops below pixel width while the tip still
    catches a pixel center), so a region that rasters disconnected is
    recounted after one dilation step before it is called a violation;
    bridged lines are tallied in ``details['bridged_lines']``.
    """
    tube = Tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="c_convexity",
        tolerance=0.0,
        seed=seed,
        details={
            "resolution": resolution,
            "stability_factor": stability_factor,
            "backend": _kernels.backend(),
            "lines": n_lines,
        },
    )
    if puncture is not None:
        report.details["puncture_radius"] = float(puncture[1])
    two_point = 0
    bridged_lines = 0

    def _counts(bitmap):
        n_region, n_comp = connectivity_counts(bitmap)
        bridged = False
        if n_region > 1:
            fat = ndimage.binary_dilation(bitmap, structure=_EIGHT).astype(np.uint8)
            if connectivity_counts(fat)[0] == 1:
                n_region, bridged = 1, True
        return n_region, n_comp, bridged

    for k in range(n_lines):
        if rng.random() < 0.7:
            for _ in range(64):
                pts = tube.sample_points(rng, 2)
                delta = pts[1] - pts[0]
                if np.linalg.norm(delta) >= 0.2:
                    break
            anchor, direction = pts[0], delta
            two_point += 1
        else:
            anchor = tube.sample_points(rng, 1)[0]
            direction = rng.normal(size=tube.n) + 1j * rng.normal(size=tube.n)
            direction = direction / np.linalg.norm(direction)
        report.samples_run += 1
        window = _content_window(tube, anchor, direction)
        raster = rasterize_line(tube, anchor, direction, resolution=resolution,
                                window=window, puncture=puncture)
        if raster.filled == 0:
            report.record(f"line {k}: empty raster")
            continue
        if raster.touches_frame:
            report.record(f"line {k}: region clipped by the window")
            continue
        n_region, n_comp, bridged = _counts(raster.bitmap)
        bridged_lines += bridged
        ok = n_region == 1 and n_comp == 1
        if n_region != 1:
            report.record(f"line {k}: region has {n_region} components")
        if n_comp != 1:
            report.record(f"line {k}: complement has {n_comp} components (holes)")
        if stability_factor and stability_factor > 1:
            fine = rasterize_line(tube, anchor, direction,
                                  resolution=resolution * stability_factor,
                                  window=window, puncture=puncture)
            nr2, nc2, bridged2 = _counts(fine.bitmap)
            bridged_lines += bridged2
            ok2 = nr2 == 1 and nc2 == 1
            if ok != ok2:
                report.record(
                    f"line {k}: verdict changed under refinement "
                    f"({n_region},{n_comp}) -> ({nr2},{nc2})"
                )
    report.details["two_point_lines"] = two_point
    report.details["bridged_lines"] = bridged_lines
    return report


# ----------------------------------------------------------------------
# duality identity


def verify_duality_identity(domain: ConvexDomain, n_samples=200, seed=0,
                            slack=1e-9, tol=1e-10) -> VerifierReport:
    """Tube duality, checked in both directions.

    Members of the dual tube must have kernels disjoint from the tube;
    separators of exterior points must land in the closed dual tube and
    vanish at their point.
    """
    tube = Tube(domain)
    dual_t, _ = dual_tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="duality_identity",
        tolerance=tol,
        seed=seed,
        details={"slack": slack, "dual_rep": type(dual_t.base.rep).__name__},
    )
    half = n_samples // 2
    # dual tube members: kernels avoid the tube
    etas = dual_t.sample_points(rng, half)
    for eta in etas:
        report.samples_run += 1
        xi = dual_t.chart.inverse @ np.append(eta, 1.0)
        basis = null_space(xi[None, :])
        for _ in range(8):
            coeff = rng.normal(size=basis.shape[1]) + 1j * rng.normal(size=basis.shape[1])
            point = HPoint(basis @ coeff)
            if tube.contains(point):
                report.record(f"kernel of a dual tube member {eta} meets the tube")
                break
    # exterior separators: in the closed dual tube, vanishing at the point
    try:
        hdom = domain if isinstance(domain.rep, HDomain) else domain.as_hdomain()
    except Exception:
        hdom = None
    if hdom is None:
        report.skipped += half
        report.details["separator_direction"] = "skipped (no functional family)"
        return report
    sep_tube = Tube(hdom)
    for k in range(half):
        z = sep_tube.sample_exterior(rng, 1)[0]
        report.samples_run += 1
        xi = tube_separator(hdom, z)
        lift = hdom.chart.inverse @ np.append(z, 1.0)
        value = abs(xi(lift)) / (np.linalg.norm(xi.coeffs) * np.linalg.norm(lift))
        report.observe(value)
        if value >= tol:
            report.record(f"separator fails to vanish at {z}", value)
        h = dual_t.chart.infinity(xi.coeffs)
        if abs(h) <= 1e-12 * np.linalg.norm(xi.coeffs):
            report.record(f"separator at {z} lies at dual chart infinity")
            continue
        eta = dual_t.chart.basis_values(xi.coeffs) / h
        defect = dual_t.violation(eta)
        report.observe(max(defect, 0.0))
        if defect > slack:
            report.record(f"separator at {z} leaves the closed dual tube ({defect:.3e})", defect)
    return report


# ----------------------------------------------------------------------
# metric consistency


def verify_metric_consistency(domain: ConvexDomain, n_pairs=300, seed=0,
                              tol=1e-10) -> VerifierReport:
    """The Hilbert metric of the base agrees with the slice metric of the
    tube on real pairs, and the slice normalizations are coherent.

    Checks, per sampled configuration: Hilbert distance equals the
    two-point tube distance for real pairs; the cross-ratio route equals
    the endpoint-gauge route; the boundary angle satisfies
    ``u = 2 arctan(tanh d)`` against the core distance.
    """
    tube = Tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="metric_consistency",
        tolerance=tol,
        seed=seed,
        details={"pairs": n_pairs},
    )
    pts = domain.sample_interior(rng, 2 * n_pairs)
    for k in range(n_pairs):
        x, y = pts[2 * k], pts[2 * k + 1]
        if np.linalg.norm(x - y) < 1e-10:
            report.skipped += 1
            continue
        report.samples_run += 1
        h = domain.hilbert_distance(x, y)
        k_dist = tube.kobayashi_supported(x, y)
        err = abs(h - k_dist) / max(1.0, h)
        report.observe(err)
        if err >= tol:
            report.record(f"hilbert vs tube distance differ at {x}, {y}", err)
        cr = domain.cross_ratio_check(x, y)
        err2 = abs(cr - h) / max(1.0, h)
        report.observe(err2)
        if err2 >= tol:
            report.record(f"cross-ratio route differs at {x}, {y}", err2)
    # boundary angle vs core distance on non-real points
    zs = tube.sample_points(rng, max(1, n_pairs // 3))
    for z in zs:
        x = z.real
        if np.linalg.norm(z.imag) < 1e-9:
            report.skipped += 1
            continue
        report.samples_run += 1
        u = tube.u_value(z)
        d, _ = tube.core_distance(z)
        err = abs(u - 2.0 * np.arctan(np.tanh(d)))
        report.observe(err)
        if err >= max(tol, 1e-9):
            report.record(f"angle/distance mismatch at {z}", err)
    return report


# ----------------------------------------------------------------------
# tangent homeomorphism


def verify_homeomorphism(domain: ConvexDomain, n_samples=200, seed=0,
                         tol=1e-9, group_elements=()) -> VerifierReport:
    """The tangent-vector chart of the tube is a bijection with the stated
    symmetries.

    Round trips point -> vector -> point and vector -> point -> vector must
    return to the start; conjugation of points negates vectors; the zero
    section is the real base; validated group elements act equivariantly.
    """
    tube = Tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="homeomorphism",
        tolerance=tol,
        seed=seed,
        details={"group_elements": len(group_elements)},
    )
    for g in group_elements:
        if not _preserves(domain, g):
            raise RepresentationError("a group element does not preserve the domain")
    zs = tube.sample_points(rng, n_samples)
    for z in zs:
        report.samples_run += 1
        vec = to_tangent(tube, z)
        back = tube.chart_complex(from_tangent(tube, vec))
        err = float(np.linalg.norm(back - z))
        report.observe(err)
        if err >= tol:
            report.record(f"point round trip failed at {z}", err)
            continue
        # conjugation equivariance
        vec_c = to_tangent(tube, np.conj(z))
        if vec.magnitude > 1e-12:
            neg = vec.negated()
            err = (
                np.linalg.norm(vec_c.base - neg.base)
                + np.linalg.norm(vec_c.direction - neg.direction)
                + abs(vec_c.magnitude - neg.magnitude)
            )
            report.observe(err)
            if err >= max(tol, 1e-8):
                report.record(f"conjugation is not vector negation at {z}", err)
        # foot agrees with the core projection
        d, foot = tube.core_distance(z)
        err = abs(d - vec.magnitude) + np.linalg.norm(foot - vec.base)
        report.observe(err)
        if err >= max(tol, 1e-8):
            report.record(f"core distance disagrees with the vector at {z}", err)
        for gi, g in enumerate(group_elements):
            moved_lift = g.matrix @ tube.chart.lift(vec.base)
            h = tube.chart.infinity(moved_lift)
            if abs(h) <= 1e-12 * np.linalg.norm(moved_lift):
                continue
            moved_z = g.matrix.astype(complex) @ (
                tube.chart.inverse @ np.append(z, 1.0)
            )
            hz = tube.chart.infinity(moved_z)
            if abs(hz) <= 1e-12 * np.linalg.norm(moved_z):
                continue
            zeta = tube.chart.basis_values(moved_z) / hz
            vec_g = to_tangent(tube, zeta)
            base_exp = tube.chart.basis_values(moved_lift) / h
            dir_exp = pushforward(g, tube.chart, vec.base, vec.direction)
            dir_exp = dir_exp / np.linalg.norm(dir_exp)
            err = (
                np.linalg.norm(vec_g.base - base_exp.real)
                + min(
                    np.linalg.norm(vec_g.direction - dir_exp),
                    np.linalg.norm(vec_g.direction + dir_exp),
                )
                + abs(vec_g.magnitude - vec.magnitude)
            )
            report.observe(err)
            if err >= max(tol, 1e-7):
                report.record(f"element {gi} does not act equivariantly at {z}", err)
    # zero section: interior real points map to zero vectors
    for x in domain.sample_interior(rng, max(1, n_samples // 4)):
        report.samples_run += 1
        vec = to_tangent(tube, x.astype(complex))
        if vec.magnitude != 0.0 or np.linalg.norm(vec.base - x) >= tol:
            report.record(f"real point {x} does not map to a zero vector")
    # vector round trip
    for k in range(max(1, n_samples // 4)):
        base = domain.sample_interior(rng, 1)[0]
        direction = rng.normal(size=tube.n)
        direction /= np.linalg.norm(direction)
        magnitude = abs(rng.normal(0.0, 0.8)) + 1e-3
        vec = TangentVector(base=base, direction=direction, magnitude=magnitude)
        report.samples_run += 1
        z = tube.chart_complex(from_tangent(tube, vec))
        back = to_tangent(tube, z)
        err = (
            np.linalg.norm(back.base - base)
            + np.linalg.norm(back.direction - direction)
            + abs(back.magnitude - magnitude)
        )
        report.observe(err)
        if err >= max(tol, 1e-8):
            report.record(f"vector round trip failed at base {base}", err)
    return report


# ----------------------------------------------------------------------
# exhaustion


def verify_exhaustion_monotone(domain: ConvexDomain, deltas=(0.6, 0.4, 0.2),
                               n_samples=200, seed=0) -> VerifierReport:
    """Tubes over a shrinking exhaustion are nested.

    ``deltas`` lists shrink parameters in decreasing domain size order is
    not required; they are sorted so the smallest domain comes first.  Every
    sample of a smaller tube must lie in every larger tube and in the full
    tube; absorption counts for full-tube samples are reported as details.
    """
    deltas = tuple(sorted(deltas, reverse=True))
    tube = Tube(domain)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    report = VerifierReport(
        name="exhaustion",
        tolerance=0.0,
        seed=seed,
        details={"deltas": ", ".join(format(d, ".3g") for d in deltas)},
    )
    stages = [Tube(domain.scaled_copy(d)) for d in deltas] + [tube]
    for i, small in enumerate(stages[:-1]):
        samples = small.sample_points(rng, n_samples // max(1, len(stages) - 1))
        for z in samples:
            report.samples_run += 1
            for big in stages[i + 1:]:
                if not big.contains(z):
                    report.record(
                        f"stage {i} sample {z} escapes a larger stage"
                    )
                    break
    absorbed = [0] * len(deltas)
    unabsorbed = 0
    for z in tube.sample_points(rng, n_samples // 2):
        report.samples_run += 1
        hit = None
        for idx in range(len(deltas) - 1, -1, -1):
            # smallest delta = largest stage domain is checked first
            if stages[idx].contains(z):
                hit = idx
        if hit is None:
            unabsorbed += 1
        else:
            absorbed[hit] += 1
    for idx, d in enumerate(deltas):
        report.details[f"absorbed_at_{format(d, '.3g')}"] = absorbed[idx]
    report.details["unabsorbed"] = unabsorbed
    return report
