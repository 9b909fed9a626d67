"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
verdict lines on passing runs).  Every criterion is checked at its stated
tolerance; the whole file is budgeted to finish in a few minutes.
"""

import math

import numpy as np
from scipy.linalg import null_space

from elliptic_tubes import catalog
from elliptic_tubes.duality import tube_separator
from elliptic_tubes.projective import ProjectiveMap, pushforward
from elliptic_tubes.quotients import (
    ConvexRPManifold,
    check_free_action,
    orbit_reduce,
    quotient_distance_cyclic,
)
from elliptic_tubes.tangent import from_tangent, to_tangent
from elliptic_tubes.tube import COMPLEX_BOUNDARY, EXTERIOR, INTERIOR, Tube
from elliptic_tubes.verify import verify_c_convexity, verify_duality_identity


def _rng(k):
    return np.random.default_rng(np.random.SeedSequence([k]))


def _verdict(num, name, ok, info):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:02d} {name}: {info}")


# ----------------------------------------------------------------------


def test_criterion_01_interval_tube_is_unit_disk():
    tube = Tube(catalog.interval())
    rng = _rng(1)
    bad = checked = 0
    for _ in range(10_000):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(abs(z) - 1.0) <= 1e-8:
            continue
        checked += 1
        if tube.contains(np.array([z])) != (abs(z) < 1.0):
            bad += 1
    _verdict(1, "interval tube = unit disk", bad == 0, f"{checked} points, {bad} disagreements")
    assert bad == 0


def test_criterion_02_membership_routes_agree():
    rng = _rng(2)
    bad = checked = 0
    for name in ("interval", "square", "triangle"):
        domain = catalog.by_name(name).as_hdomain()
        tube = Tube(domain)
        lo, hi = domain.bbox
        width = np.max(hi - lo)
        for _ in range(10_000):
            x = rng.uniform(lo - 0.3 * width, hi + 0.3 * width)
            y = rng.uniform(-0.8 * width, 0.8 * width, size=domain.n)
            z = x + 1j * y
            cls = tube.boundary_classify(z, band=1e-8)
            if cls not in (INTERIOR, EXTERIOR):
                continue
            checked += 1
            if tube.contains(z) != tube.contains_pairwise(z):
                bad += 1
    _verdict(2, "slice and pairwise routes", bad == 0, f"{checked} samples, {bad} disagreements")
    assert bad == 0


def test_criterion_03_hilbert_equals_slice_poincare():
    rng = _rng(3)
    worst = 0.0
    for name in ("square", "simplex", "ellipse"):
        domain = catalog.by_name(name)
        tube = Tube(domain)
        pts = domain.sample_interior(rng, 2000)
        for k in range(1000):
            x, y = pts[2 * k], pts[2 * k + 1]
            if np.linalg.norm(x - y) < 1e-10:
                continue
            err = abs(domain.hilbert_distance(x, y) - tube.kobayashi_supported(x, y))
            worst = max(worst, err)
    anchor = abs(
        catalog.square().hilbert_distance(np.zeros(2), np.array([0.5, 0.0]))
        - 0.5 * math.log(3.0)
    )
    ok = worst < 1e-10 and anchor < 1e-12
    _verdict(3, "Hilbert = slice Poincare", ok, f"max |h-k| = {worst:.3e}, anchor err {anchor:.2e}")
    assert worst < 1e-10
    assert anchor < 1e-12


def test_criterion_04_angle_matches_distance():
    rng = _rng(4)
    worst = 0.0
    for name in ("square", "simplex", "ellipse"):
        tube = Tube(catalog.by_name(name))
        for z in tube.sample_points(rng, 3334):
            u = tube.u_value(z)
            d, _ = tube.core_distance(z)
            worst = max(worst, abs(u - 2.0 * math.atan(math.tanh(d))))
    tube = Tube(catalog.interval())
    half_i = np.array([0.5j])
    a_u = abs(tube.u_value(half_i) - math.atan2(4.0, 3.0))
    a_d = abs(tube.core_distance(half_i)[0] - math.atanh(0.5))
    ok = worst < 1e-9 and a_u < 1e-12 and a_d < 1e-12
    _verdict(4, "u = 2 arctan(tanh d)", ok,
             f"max err {worst:.3e} over 10002 samples, anchors {a_u:.2e}/{a_d:.2e}")
    assert worst < 1e-9
    assert a_u < 1e-12 and a_d < 1e-12


def test_criterion_05_constructed_boundary_points():
    rng = _rng(5)
    bad_class = 0
    worst_mod = 0.0
    for name in ("interval", "square", "ellipse", "simplex"):
        domain = catalog.by_name(name)
        tube = Tube(domain)
        for _ in range(250):
            x = domain.sample_interior(rng, 1)[0]
            direction = rng.normal(size=domain.n)
            direction /= np.linalg.norm(direction)
            clip = domain.line_clip((x, direction))
            s = rng.uniform(0.05, 0.95) * (clip.b - clip.a) + clip.a
            t = math.sqrt((clip.b - s) * (s - clip.a))
            z = x + (s + 1j * t) * direction
            if tube.boundary_classify(z) != COMPLEX_BOUNDARY:
                bad_class += 1
                continue
            disk = tube.slice_disk(z)
            m = disk.to_unit_disk(disk.coord(z))
            worst_mod = max(worst_mod, abs(abs(m) - 1.0))
    ok = bad_class == 0 and worst_mod < 1e-9
    _verdict(5, "gauge-product boundary points", ok,
             f"1000 points, {bad_class} misclassified, max ||m|-1| = {worst_mod:.3e}")
    assert bad_class == 0
    assert worst_mod < 1e-9


def test_criterion_06_linear_convexity_separators():
    rng = _rng(6)
    domain = catalog.square().as_hdomain()
    tube = Tube(domain)
    fam = domain.rows() @ domain.chart.matrix
    pairs = [(i, j) for i in range(len(fam)) for j in range(i, len(fam))]
    bad_vanish = kernel_hits = 0
    worst = 0.0
    for z in tube.sample_exterior(rng, 1000):
        xi = tube_separator(domain, z)
        lift = domain.chart.inverse @ np.append(z, 1.0)
        rel = abs(xi(lift)) / (np.linalg.norm(xi.coeffs) * np.linalg.norm(lift))
        worst = max(worst, rel)
        if rel >= 1e-10:
            bad_vanish += 1
            continue
        basis = null_space(xi.coeffs[None, :])  # (3, 2)
        coeffs = rng.normal(size=(2, 1000)) + 1j * rng.normal(size=(2, 1000))
        lifts = basis @ coeffs  # kernel points, (3, 1000)
        vals = fam @ lifts  # (m, 1000)
        inside = np.ones(1000, dtype=bool)
        for i, j in pairs:
            inside &= np.real(vals[i] * np.conj(vals[j])) > 0.0
        kernel_hits += int(inside.sum())
    ok = bad_vanish == 0 and kernel_hits == 0
    _verdict(6, "separators", ok,
             f"1000 exterior points, max rel |xi(z)| = {worst:.3e}, kernel hits {kernel_hits}")
    assert bad_vanish == 0
    assert kernel_hits == 0


def test_criterion_07_duality_identity():
    reports = []
    for name in ("simplex", "square"):
        reports.append(verify_duality_identity(catalog.by_name(name), n_samples=20_000, seed=7))
    ok = all(r.passed for r in reports)
    info = "; ".join(
        f"{name} {r.samples_run} samples {len(r.violations)} violations"
        for name, r in zip(("simplex", "square"), reports)
    )
    _verdict(7, "duality identity", ok, info)
    for r in reports:
        assert r.passed, r.violations[:3]


def test_criterion_08_c_convexity_raster():
    report = verify_c_convexity(catalog.triangle(), n_lines=200, resolution=512,
                                stability_factor=2, seed=8)
    control = verify_c_convexity(
        catalog.triangle(), n_lines=6, resolution=512, seed=5,
        puncture=(np.array([0.25, 0.25]), 0.08),
    )
    holed = any("holes" in v for v in control.violations)
    ok = report.passed and (not control.passed) and holed
    _verdict(8, "slice topology", ok,
             f"200 lines clean: {report.passed}; punctured control fails: {not control.passed}")
    assert report.passed, report.violations[:3]
    assert not control.passed
    assert holed


def test_criterion_09_tangent_homeomorphism():
    rng = _rng(9)
    domain = catalog.simplex()
    tube = Tube(domain)
    gens = [np.diag([2.0, 1.0, 0.5]), np.diag([0.5, 2.0, 1.0])]
    worst_rt = worst_conj = worst_core = worst_equi = 0.0
    for z in tube.sample_points(rng, 1000):
        vec = to_tangent(tube, z)
        worst_rt = max(worst_rt, np.linalg.norm(from_tangent(tube, vec) - z))
        if vec.magnitude > 1e-12:
            flipped = to_tangent(tube, np.conj(z))
            neg = vec.negated()
            worst_conj = max(
                worst_conj,
                np.linalg.norm(flipped.base - neg.base)
                + np.linalg.norm(flipped.direction - neg.direction)
                + abs(flipped.magnitude - neg.magnitude),
            )
        d, foot = tube.core_distance(z)
        worst_core = max(worst_core,
                         abs(d - vec.magnitude) + np.linalg.norm(foot - vec.base))
        for g in gens:
            gmap = ProjectiveMap(g)
            moved = g.astype(complex) @ (tube.chart.inverse @ np.append(z, 1.0))
            zeta = tube.chart.basis_values(moved) / tube.chart.infinity(moved)
            vec_g = to_tangent(tube, zeta)
            base_lift = g @ tube.chart.lift(vec.base)
            base_exp = (tube.chart.basis_values(base_lift)
                        / tube.chart.infinity(base_lift)).real
            dir_exp = pushforward(gmap, tube.chart, vec.base, vec.direction)
            dir_exp /= np.linalg.norm(dir_exp)
            err = (
                np.linalg.norm(vec_g.base - base_exp)
                + min(np.linalg.norm(vec_g.direction - dir_exp),
                      np.linalg.norm(vec_g.direction + dir_exp))
                + abs(vec_g.magnitude - vec.magnitude)
            )
            worst_equi = max(worst_equi, err)
    anchor = to_tangent(Tube(catalog.interval()), np.array([0.5j]))
    anchor_err = (
        abs(anchor.base[0]) + abs(anchor.direction[0] - 1.0)
        + abs(anchor.magnitude - math.atanh(0.5))
    )
    ok = (worst_rt < 1e-8 and worst_conj < 1e-10 and worst_equi < 1e-9
          and worst_core < 1e-9 and anchor_err < 1e-12)
    _verdict(9, "tangent-bundle homeomorphism", ok,
             f"rt {worst_rt:.2e}, conj {worst_conj:.2e}, core {worst_core:.2e}, "
             f"equivariance {worst_equi:.2e}, anchor {anchor_err:.2e}")
    assert worst_rt < 1e-8
    assert worst_conj < 1e-10
    assert worst_core < 1e-9
    assert worst_equi < 1e-9
    assert anchor_err < 1e-12


def test_criterion_10_completeness_proxy():
    rng = _rng(10)
    tube_i = Tube(catalog.interval())
    pairs = [(tube_i, tube_i.slice_on_line(np.zeros(1), np.ones(1)))]
    for name in ("square", "triangle"):
        tube = Tube(catalog.by_name(name))
        for _ in range(2):
            z = tube.sample_points(rng, 1)[0]
            while np.linalg.norm(z.imag) < 1e-6:
                z = tube.sample_points(rng, 1)[0]
            pairs.append((tube, tube.slice_disk(z)))
    monotone_bad = 0
    min_top = np.inf
    for tube, disk in pairs:
        # radii in the normalized unit disk of the slice, rays of several
        # inclinations; the distance is computed by the real pipeline at
        # each chart point, not from the disk model
        for theta in (0.3, 0.7, 1.1, 0.5 * math.pi):
            top = 0.99995 if theta == 0.5 * math.pi else 0.999
            rs = np.linspace(0.05, top, 60)
            ds = []
            for r in rs:
                tau = disk.from_unit_disk(r * np.exp(1j * theta))
                ds.append(tube.core_distance(disk.point(tau))[0])
            if not all(b > a for a, b in zip(ds, ds[1:])):
                monotone_bad += 1
            if theta == 0.5 * math.pi:
                min_top = min(min_top, ds[-1])
    ok = monotone_bad == 0 and min_top > 5.0
    _verdict(10, "boundary divergence", ok,
             f"{len(pairs)} slices, non-monotone rays {monotone_bad}, "
             f"min d at r=0.99995: {min_top:.4f}")
    assert monotone_bad == 0
    assert min_top > 5.0


def test_criterion_11_complexification_demo():
    manifold = ConvexRPManifold(catalog.halfline(), [catalog.doubling_map()])
    free = check_free_action(manifold, word_length=8)
    rep = orbit_reduce(manifold, 5.0 + 1.0j)
    anchor_err = abs(rep.coordinate - (1.25 + 0.25j))
    dist = quotient_distance_cyclic(manifold, 1.0, 4.0)
    ok = free.passed and anchor_err < 1e-15 and abs(dist) < 1e-12
    _verdict(11, "cyclic complexification", ok,
             f"free action {free.verdict}, orbit anchor err {anchor_err:.2e}, "
             f"d(1, 4) = {dist:.2e}")
    assert free.passed
    assert anchor_err < 1e-15
    assert abs(dist) < 1e-12
