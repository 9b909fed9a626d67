"""Ready-made example domains.

Each factory returns a fresh ConvexDomain.  They cover every representation
kind and a couple of non-standard charts, and are the domains exercised by
the command line suites and the acceptance tests.
"""

from __future__ import annotations

import numpy as np

from .domains import ConvexDomain, Ellipsoid, HDomain, VPolytope
from .projective import Chart, Functional, HPoint, ProjectiveMap


def interval(a=-1.0, b=1.0) -> ConvexDomain:
    """The open interval (a, b) of the projective line, as a V-polytope."""
    rep = VPolytope((HPoint([a, 1.0]), HPoint([b, 1.0])))
    return ConvexDomain(rep, name="interval")


def square(half=1.0) -> ConvexDomain:
    """The square (-half, half)^2, as a V-polytope."""
    h = float(half)
    verts = [(-h, -h), (h, -h), (h, h), (-h, h)]
    rep = VPolytope(tuple(HPoint([x, y, 1.0]) for x, y in verts))
    return ConvexDomain(rep, name="square")


def triangle() -> ConvexDomain:
    """The triangle with corners (0,0), (1,0), (0,1), as an H-domain."""
    rep = HDomain(
        (
            Functional([1.0, 0.0, 0.0]),
            Functional([0.0, 1.0, 0.0]),
            Functional([-1.0, -1.0, 1.0]),
        )
    )
    return ConvexDomain(rep, reference_point=(0.25, 0.25), name="triangle")


def simplex() -> ConvexDomain:
    """The projectivized positive octant, a triangle with vertices at the
    coordinate axes, in the chart whose infinity is x+y+z=0.

    Diagonal matrices with positive entries preserve it, which makes it the
    standard domain for equivariance checks.
    """
    chart = Chart([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], [1.0, 1.0, 1.0])
    rep = VPolytope((HPoint([1.0, 0, 0]), HPoint([0, 1.0, 0]), HPoint([0, 0, 1.0])))
    return ConvexDomain(rep, chart=chart, reference_point=HPoint([1.0, 1.0, 1.0]), name="simplex")


def disk(radius=1.0) -> ConvexDomain:
    """The round disk of the given radius centered at the origin."""
    r = float(radius)
    rep = Ellipsoid([0.0, 0.0], np.eye(2) / (r * r))
    return ConvexDomain(rep, name="disk")


def ellipse(a=0.8, b=0.5) -> ConvexDomain:
    """An axis-aligned ellipse with semiaxes a and b."""
    rep = Ellipsoid([0.0, 0.0], np.diag([1.0 / (a * a), 1.0 / (b * b)]))
    return ConvexDomain(rep, name="ellipse")


def halfline() -> ConvexDomain:
    """The ray (0, infinity) of the projective line, bounded in the chart
    s = t / (t + 1); the model domain for cyclic quotients."""
    chart = Chart([[1.0, 0.0]], [1.0, 1.0])
    rep = HDomain((Functional([1.0, 0.0]), Functional([0.0, 1.0])))
    return ConvexDomain(rep, chart=chart, reference_point=(0.5,), name="halfline")


def doubling_map() -> ProjectiveMap:
    """The hyperbolic element t -> 4t of the projective line (determinant
    one normalization); generates a free cyclic action on the halfline."""
    return ProjectiveMap(np.diag([2.0, 0.5]))


def simplex_diagonal_maps():
    """Two diagonal elements preserving the simplex, for equivariance
    tests."""
    return (
        ProjectiveMap(np.diag([2.0, 1.0, 0.5])),
        ProjectiveMap(np.diag([0.5, 2.0, 1.0])),
    )


_FACTORIES = {
    "interval": interval,
    "square": square,
    "triangle": triangle,
    "simplex": simplex,
    "disk": disk,
    "ellipse": ellipse,
    "halfline": halfline,
}


def by_name(name: str) -> ConvexDomain:
    """Look up a catalog domain by its name."""
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise KeyError(f"unknown catalog domain {name!r}; have {sorted(_FACTORIES)}") from None


def names():
    return sorted(_FACTORIES)
