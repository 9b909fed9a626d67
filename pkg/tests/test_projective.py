import numpy as np
import pytest

from elliptic_tubes.errors import InfinityError, RealPointError
from elliptic_tubes.projective import (
    Chart,
    Functional,
    HPoint,
    ProjectiveMap,
    RealLine,
    cross_ratio,
    is_real,
    line_chart,
    normalize_lift,
    proj_eq,
    pushforward,
    real_trace_line,
)


# ---------- lifts and classes -------------------------------------------------


def test_normalize_lift_unit_and_phase():
    v = normalize_lift([3.0, 4.0])
    np.testing.assert_allclose(np.linalg.norm(v), 1.0)
    assert v[0] > 0
    # complex phase is rotated away up to overall sign conventions
    w = normalize_lift([1j, -2j])
    assert abs(w.imag).max() < 1e-12 or abs(w.real).max() < 1e-12


def test_hpoint_proj_eq_ignores_scale_and_phase():
    p = HPoint([1.0, 2.0, -1.0])
    q = HPoint([-2.0, -4.0, 2.0])
    r = HPoint(np.array([1.0, 2.0, -1.0]) * (0.3 + 0.4j))
    assert p.proj_eq(q)
    assert p.proj_eq(r)
    assert not p.proj_eq(HPoint([1.0, 2.0, -0.9]))


def test_functional_pairing_is_bilinear_not_sesquilinear():
    f = Functional([1.0, 0.0])
    val = f(np.array([2.0 + 3.0j, 1.0]))
    # no conjugation happens in the pairing
    assert val == pytest.approx((2 + 3j) * f.coeffs[0])


def test_proj_eq_rejects_mismatched_sizes():
    with pytest.raises(Exception):
        proj_eq([1.0, 0.0], [1.0, 0.0, 0.0])


# ---------- reality -----------------------------------------------------------


def test_is_real_detects_rotated_real_points(rng):
    for _ in range(50):
        x = rng.normal(size=4)
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        flag, rep = is_real(HPoint(phase * x))
        assert flag
        assert rep is not None and not rep.is_complex
        assert proj_eq(rep.coords, x)


def test_is_real_rejects_honestly_complex_points():
    flag, rep = is_real(HPoint([1.0 + 1.0j, 1.0 - 1.0j, 0.5]))
    assert not flag and rep is None


# ---------- real lines --------------------------------------------------------


def test_real_trace_line_contains_point_and_conjugate(rng):
    for _ in range(25):
        z = HPoint(rng.normal(size=3) + 1j * rng.normal(size=3))
        line = real_trace_line(z)
        assert line.contains(z)
        assert line.contains(z.conj())


def test_real_trace_line_rejects_real_input():
    with pytest.raises(RealPointError):
        real_trace_line(HPoint([1.0, 2.0, 3.0]))


def test_line_chart_round_trip(rng):
    line = RealLine(HPoint([1.0, 0.0, 1.0]), HPoint([0.0, 1.0, 1.0]))
    to_line, from_line = line_chart(line)
    for _ in range(20):
        tau = rng.normal()
        p = from_line(tau)
        assert line.contains(p)
        assert to_line(p) == pytest.approx(tau, abs=1e-9)


# ---------- charts ------------------------------------------------------------


def test_standard_chart_round_trip(rng):
    chart = Chart.standard(3)
    assert chart.is_standard
    x = rng.normal(size=3)
    lift = chart.lift(x)
    np.testing.assert_allclose(chart.to_chart(HPoint(lift)), x, atol=1e-12)


def test_chart_infinity_raises():
    chart = Chart.standard(2)
    with pytest.raises(InfinityError):
        chart.to_chart(HPoint([1.0, 1.0, 0.0]))


def test_custom_chart_consistency():
    # infinity x+y+z=0, basis the first two coordinates
    chart = Chart([[1, 0, 0], [0, 1, 0]], [1, 1, 1])
    x = np.array([0.2, 0.3])
    lift = chart.lift(x)
    # the lift has infinity-value one by construction
    assert chart.infinity(lift) == pytest.approx(1.0)
    np.testing.assert_allclose(chart.to_chart(HPoint(lift)), x, atol=1e-12)
    d = chart.direction_lift(np.array([1.0, 0.0]))
    assert chart.infinity(d) == pytest.approx(0.0, abs=1e-14)


# ---------- cross ratio -------------------------------------------------------


def test_cross_ratio_on_affine_line_matches_formula(rng):
    for _ in range(30):
        vals = np.sort(rng.normal(size=4) * 2)
        a, x, y, b = vals
        if min(np.diff(vals)) < 1e-3:
            continue
        pts = [HPoint([t, 1.0]) for t in (a, x, y, b)]
        got = cross_ratio(*pts)
        want = ((a - y) * (b - x)) / ((a - x) * (b - y))
        assert got == pytest.approx(want, rel=1e-9)


def test_cross_ratio_projective_invariance(rng):
    pts = [HPoint([t, 1.0]) for t in (-1.0, 0.0, 0.5, 1.0)]
    base = cross_ratio(*pts)
    for _ in range(20):
        mat = rng.normal(size=(2, 2))
        if abs(np.linalg.det(mat)) < 0.1:
            continue
        amap = ProjectiveMap(mat)
        moved = [amap.apply(p) for p in pts]
        assert cross_ratio(*moved) == pytest.approx(base, rel=1e-8)


# ---------- projective maps ---------------------------------------------------


def test_projective_map_compose_inverse(rng):
    a = ProjectiveMap(rng.normal(size=(3, 3)) + 2 * np.eye(3))
    b = ProjectiveMap(rng.normal(size=(3, 3)) + 2 * np.eye(3))
    p = HPoint(rng.normal(size=3))
    q = (a @ b).apply(p)
    assert q.proj_eq(a.apply(b.apply(p)))
    assert a.inverse().apply(a.apply(p)).proj_eq(p)
    assert (a @ a.inverse()).is_identity()


def test_pushforward_matches_finite_differences(rng):
    chart = Chart([[1, 0, 0], [0, 1, 0]], [1, 1, 1])
    amap = ProjectiveMap(np.diag([2.0, 1.0, 0.5]))
    for _ in range(20):
        x = rng.uniform(0.2, 0.8, size=2)
        w = rng.normal(size=2)
        got = pushforward(amap, chart, x, w)
        eps = 1e-7
        fwd = chart.to_chart(HPoint(amap.matrix @ chart.lift(x + eps * w)))
        bck = chart.to_chart(HPoint(amap.matrix @ chart.lift(x - eps * w)))
        np.testing.assert_allclose(got, (fwd - bck) / (2 * eps), atol=1e-6)
