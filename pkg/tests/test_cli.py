import math

import numpy as np
import pytest

from elliptic_tubes.cli import _parse_complex, _parse_point, main
from elliptic_tubes.domspec import parse_domain_text


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------- parsing helpers --------------------------------------------------------


def test_parse_complex_notation():
    assert _parse_complex("0.5i") == 0.5j
    assert _parse_complex("-1+0.25i") == -1 + 0.25j
    assert _parse_complex("2") == 2 + 0j
    assert _parse_complex("1-I") == 1 - 1j


def test_parse_point():
    np.testing.assert_allclose(
        _parse_point("0.1+0.2i,0.3"), np.array([0.1 + 0.2j, 0.3 + 0j])
    )


# ---------- map / dist --------------------------------------------------------------


def test_map_anchor_line(capsys):
    code, out, _ = run(capsys, "map", "--domain", "interval", "0.5i")
    assert code == 0
    assert out.strip() == "0;+1;0.549306144334055"


def test_map_real_point_zero_vector(capsys):
    code, out, _ = run(capsys, "map", "--domain", "interval", "0.25")
    assert code == 0
    base, direction, magnitude = out.strip().split(";")
    assert float(base) == pytest.approx(0.25)
    assert float(direction) == 0.0
    assert float(magnitude) == 0.0


def test_dist_matches_library(capsys, interval):
    code, out, _ = run(capsys, "dist", "--domain", "interval", "0", "0.5")
    assert code == 0
    assert float(out.strip()) == pytest.approx(math.atanh(0.5), abs=1e-12)


def test_dist_outside_is_geometry_error(capsys):
    code, out, err = run(capsys, "dist", "--domain", "interval", "3", "0.5")
    assert code == 1


# ---------- slice --------------------------------------------------------------------


def test_slice_csv(capsys, tmp_path):
    out_path = tmp_path / "grid.csv"
    code, out, _ = run(
        capsys,
        "slice",
        "--domain",
        "interval",
        "--resolution",
        "16",
        "--output",
        str(out_path),
    )
    assert code == 0
    rows = [line.split(",") for line in out_path.read_text().strip().splitlines()]
    assert len(rows) == 16
    assert all(len(r) == 16 for r in rows)
    values = np.array([[float(v) for v in r] for r in rows])
    # exterior encoded as -1, chart infinity as -2, interior angles in [0, pi/2)
    assert values.max() < math.pi / 2
    assert (values == -1.0).any()
    inside = values[values >= 0]
    assert inside.size > 0


def test_slice_pgm(tmp_path, capsys):
    out_path = tmp_path / "grid.pgm"
    code, _, _ = run(
        capsys,
        "slice",
        "--domain",
        "square",
        "--resolution",
        "24",
        "--format",
        "pgm",
        "--output",
        str(out_path),
    )
    assert code == 0
    blob = out_path.read_bytes()
    assert blob.startswith(b"P5")
    header = blob.split(b"\n")
    assert header[1] == b"24 24"
    assert header[2] == b"255"


def test_slice_explicit_line(capsys, tmp_path):
    out_path = tmp_path / "line.csv"
    code, _, _ = run(
        capsys,
        "slice",
        "--domain",
        "square",
        "--anchor",
        "0.1,0.2",
        "--direction",
        "1,0.5",
        "--resolution",
        "12",
        "--output",
        str(out_path),
    )
    assert code == 0
    assert len(out_path.read_text().strip().splitlines()) == 12


# ---------- dual ---------------------------------------------------------------------


def test_dual_emits_parseable_spec(capsys):
    code, out, _ = run(capsys, "dual", "--domain", "square")
    assert code == 0
    spec = parse_domain_text(out)
    assert spec.domain.n == 2
    assert spec.name == "square-dual"
    # the dual of the square contains the origin of its chart
    assert spec.domain.contains(np.zeros(2))


def test_dual_round_trip_through_file(tmp_path, capsys):
    first = tmp_path / "dual.dom"
    code, out, _ = run(capsys, "dual", "--domain", "triangle", "--output", str(first))
    assert code == 0
    code2, out2, _ = run(capsys, "dual", "--file", str(first))
    assert code2 == 0
    spec = parse_domain_text(out2)
    # the double dual is the original subset of RP^2, but described in the
    # double-dual chart, so probe it with a homogeneous point
    from elliptic_tubes.projective import HPoint

    assert spec.domain.contains(HPoint([0.25, 0.25, 1.0]))
    assert not spec.domain.contains(HPoint([2.0, 2.0, 1.0]))


# ---------- check --------------------------------------------------------------------


def test_check_quick_suite(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--domain",
        "triangle",
        "--suite",
        "linconv",
        "--samples",
        "30",
    )
    assert code == 0
    assert "[PASS] linear_convexity" in out


def test_check_all_on_halfline(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--domain",
        "halfline",
        "--samples",
        "40",
        "--resolution",
        "64",
    )
    assert code == 0
    assert "[PASS]" in out
    assert "free_action" in out


def test_check_skips_group_suites_without_generators(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--domain",
        "ellipse",
        "--suite",
        "action",
        "--samples",
        "20",
    )
    assert code == 0
    assert "SKIP" in out


def test_check_punctured_file_fails(capsys, tmp_path):
    spec = tmp_path / "punct.dom"
    spec.write_text(
        "dimension: 1\n"
        "type: vpolytope\n"
        "vertices: (-1, 1); (1, 1)\n"
        "puncture: (0); 0.3\n"
    )
    code, out, _ = run(
        capsys,
        "check",
        "--file",
        str(spec),
        "--suite",
        "cconv",
        "--resolution",
        "96",
    )
    assert code == 1
    assert "[FAIL]" in out


def test_check_verbose_prints_report_body(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--domain",
        "square",
        "--suite",
        "metric",
        "--samples",
        "25",
        "--verbose",
    )
    assert code == 0
    assert "report: metric_consistency" in out
    assert "max_error:" in out


# ---------- usage errors -------------------------------------------------------------


def test_unknown_domain_is_usage_error(capsys):
    code, _, err = run(capsys, "map", "--domain", "dodecahedron", "0.5i")
    assert code == 2


def test_bad_complex_is_usage_error(capsys):
    code, _, err = run(capsys, "map", "--domain", "interval", "zebra")
    assert code == 2


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "dist", "--file", "/nonexistent.dom", "0", "0.5")
    assert code == 2
