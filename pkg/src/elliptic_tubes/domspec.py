"""Plain-text domain descriptions.

A domain file is a sequence of ``key: value`` lines; blank lines and lines
starting with ``#`` are ignored.  Keys:

    name:             optional label
    dimension:        projective dimension n
    type:             vpolytope | hdomain | ellipsoid
    vertices:         homogeneous lifts, e.g. ``(-1, 1); (1, 1)``
    functionals:      functional coefficient rows (same syntax)
    center:           ellipsoid center in chart coordinates
    shape:            ellipsoid shape matrix rows
    chart:            n+1 rows (basis rows, then the infinity row)
    reference_point:  chart coordinates of an interior point
    generator:        a matrix, rows separated by ``;`` (repeatable)
    puncture:         center tuple and radius, e.g. ``(0, 0); 0.3``

Tuples are comma-separated floats in parentheses; lists of tuples are
separated by semicolons.  Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domains import ConvexDomain, Ellipsoid, HDomain, VPolytope
from .errors import DomainSpecError
from .projective import Chart, Functional, HPoint, ProjectiveMap

_KNOWN_KEYS = {
    "name",
    "dimension",
    "type",
    "vertices",
    "functionals",
    "center",
    "shape",
    "chart",
    "reference_point",
    "generator",
    "puncture",
}


@dataclass
class DomainSpec:
    """A parsed domain file: the domain plus optional extras."""

    domain: ConvexDomain
    generators: tuple = ()
    puncture: tuple = None  # (center array, radius)
    name: str = None
    fields: dict = field(default_factory=dict)


def _parse_tuple(token, lineno):
    token = token.strip()
    if not (token.startswith("(") and token.endswith(")")):
        raise DomainSpecError(f"line {lineno}: expected a parenthesized tuple, got {token!r}")
    inner = token[1:-1].strip()
    if not inner:
        raise DomainSpecError(f"line {lineno}: empty tuple")
    try:
        return [float(part) for part in inner.split(",")]
    except ValueError as exc:
        raise DomainSpecError(f"line {lineno}: bad number in {token!r}") from exc


def _parse_tuples(value, lineno):
    return [_parse_tuple(tok, lineno) for tok in value.split(";") if tok.strip()]


def parse_domain_text(text: str) -> DomainSpec:
    """Parse a domain description; raises DomainSpecError on bad input."""
    fields = {}
    generators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise DomainSpecError(f"line {lineno}: expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise DomainSpecError(f"line {lineno}: unknown key {key!r}")
        if key == "generator":
            generators.append((lineno, value))
            continue
        if key in fields:
            raise DomainSpecError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = (lineno, value)

    def need(key):
        if key not in fields:
            raise DomainSpecError(f"missing required key {key!r}")
        return fields[key]

    lineno, value = need("dimension")
    try:
        n = int(value)
    except ValueError:
        raise DomainSpecError(f"line {lineno}: dimension must be an integer") from None
    if n < 1:
        raise DomainSpecError(f"line {lineno}: dimension must be positive")

    lineno, kind = need("type")
    kind = kind.lower()
    if kind not in ("vpolytope", "hdomain", "ellipsoid"):
        raise DomainSpecError(f"line {lineno}: unknown type {kind!r}")

    chart = None
    if "chart" in fields:
        lineno, value = fields["chart"]
        rows = _parse_tuples(value, lineno)
        if len(rows) != n + 1 or any(len(r) != n + 1 for r in rows):
            raise DomainSpecError(f"line {lineno}: chart needs {n + 1} rows of length {n + 1}")
        chart = Chart(rows[:-1], rows[-1])

    reference = None
    if "reference_point" in fields:
        lineno, value = fields["reference_point"]
        ref = _parse_tuple(value, lineno)
        if len(ref) != n:
            raise DomainSpecError(f"line {lineno}: reference_point needs {n} coordinates")
        reference = np.array(ref)

    if kind == "vpolytope":
        lineno, value = need("vertices")
        rows = _parse_tuples(value, lineno)
        if any(len(r) != n + 1 for r in rows):
            raise DomainSpecError(f"line {lineno}: vertices need {n + 1} homogeneous coordinates")
        if len(rows) < n + 1:
            raise DomainSpecError(f"line {lineno}: at least {n + 1} vertices required")
        rep = VPolytope(tuple(HPoint(r) for r in rows))
    elif kind == "hdomain":
        lineno, value = need("functionals")
        rows = _parse_tuples(value, lineno)
        if any(len(r) != n + 1 for r in rows):
            raise DomainSpecError(f"line {lineno}: functionals need {n + 1} coefficients")
        if len(rows) < n + 1:
            raise DomainSpecError(f"line {lineno}: at least {n + 1} functionals required")
        rep = HDomain(tuple(Functional(r) for r in rows))
        if reference is None:
            raise DomainSpecError("hdomain requires reference_point")
    else:
        lineno, value = need("center")
        center = _parse_tuple(value, lineno)
        if len(center) != n:
            raise DomainSpecError(f"line {lineno}: center needs {n} coordinates")
        lineno, value = need("shape")
        rows = _parse_tuples(value, lineno)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DomainSpecError(f"line {lineno}: shape needs {n} rows of length {n}")
        shape = np.array(rows)
        rep = Ellipsoid(center, 0.5 * (shape + shape.T))

    name = fields.get("name", (0, None))[1]
    try:
        domain = ConvexDomain(rep, chart=chart, reference_point=reference, name=name)
    except Exception as exc:
        raise DomainSpecError(f"inconsistent domain description: {exc}") from exc

    gen_maps = []
    for lineno, value in generators:
        rows = _parse_tuples(value, lineno)
        if len(rows) != n + 1 or any(len(r) != n + 1 for r in rows):
            raise DomainSpecError(f"line {lineno}: generator needs {n + 1} rows of length {n + 1}")
        gen_maps.append(ProjectiveMap(np.array(rows)))

    puncture = None
    if "puncture" in fields:
        lineno, value = fields["puncture"]
        parts = [tok.strip() for tok in value.split(";") if tok.strip()]
        if len(parts) != 2:
            raise DomainSpecError(f"line {lineno}: puncture is 'center; radius'")
        center = _parse_tuple(parts[0], lineno)
        if len(center) != n:
            raise DomainSpecError(f"line {lineno}: puncture center needs {n} coordinates")
        try:
            radius = float(parts[1])
        except ValueError:
            raise DomainSpecError(f"line {lineno}: bad puncture radius") from None
        if radius <= 0:
            raise DomainSpecError(f"line {lineno}: puncture radius must be positive")
        puncture = (np.array(center), radius)

    return DomainSpec(
        domain=domain,
        generators=tuple(gen_maps),
        puncture=puncture,
        name=name,
        fields={k: v for k, (_, v) in fields.items()},
    )


def _fmt_tuple(values):
    return "(" + ", ".join(format(float(v), ".17g") for v in values) + ")"


def _fmt_tuples(rows):
    return "; ".join(_fmt_tuple(r) for r in rows)


def format_domain_text(domain: ConvexDomain, generators=(), puncture=None, name=None) -> str:
    """Render a domain (plus optional generators/puncture) as spec text."""
    lines = []
    label = name or domain.name
    if label:
        lines.append(f"name: {label}")
    lines.append(f"dimension: {domain.n}")
    rep = domain.rep
    if isinstance(rep, VPolytope):
        lines.append("type: vpolytope")
        lines.append("vertices: " + _fmt_tuples([v.coords for v in rep.vertices]))
    elif isinstance(rep, HDomain):
        lines.append("type: hdomain")
        lines.append("functionals: " + _fmt_tuples([f.coeffs for f in rep.functionals]))
    else:
        center, shape = domain.ellipsoid_data()
        lines.append("type: ellipsoid")
        lines.append("center: " + _fmt_tuple(center))
        lines.append("shape: " + _fmt_tuples(shape))
    if not domain.chart.is_standard:
        lines.append("chart: " + _fmt_tuples(domain.chart.matrix))
    lines.append("reference_point: " + _fmt_tuple(domain.reference))
    for g in generators:
        mat = g.matrix if hasattr(g, "matrix") else np.asarray(g)
        lines.append("generator: " + _fmt_tuples(mat))
    if puncture is not None:
        center, radius = puncture
        lines.append(
            "puncture: " + _fmt_tuple(np.atleast_1d(center)) + "; " + format(float(radius), ".17g")
        )
    return "\n".join(lines) + "\n"


def load_domain(path) -> DomainSpec:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return parse_domain_text(text)
    except DomainSpecError as exc:
        raise DomainSpecError(f"{path}: {exc}") from None


def save_domain(path, domain, generators=(), puncture=None, name=None):
    text = format_domain_text(domain, generators=generators, puncture=puncture, name=name)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
