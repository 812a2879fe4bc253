"""Certified rational versions of the classical configurations.

Each builder replaces irrational coordinates by rationals and then re-checks
the required distance pattern exactly before handing the points out.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .geometry import EUCLIDEAN, PRODUCT_L1_L2, Metric, dist_lt, find_apex
from .simplicial import PointCloud

__all__ = [
    "CertificateError",
    "lifted_hexagon_cloud",
    "product_metric_configuration",
    "crosspolytope_cloud",
    "GALLERY",
]


class CertificateError(ValueError):
    """The rational configuration does not have the required distance pattern."""


SQRT3_HALF = Fraction(math.sqrt(3) / 2).limit_denominator(10**6)


def _hexagon_directions(s: Fraction = SQRT3_HALF) -> list:
    # xi^k for xi = exp(i pi / 3), with sqrt(3)/2 replaced by s
    h = Fraction(1, 2)
    return [(Fraction(1), Fraction(0)), (h, s), (-h, s), (Fraction(-1), Fraction(0)), (-h, -s), (h, -s)]


def lifted_hexagon_cloud(c=Fraction(57, 100), eps=Fraction(1, 100)) -> PointCloud:
    """Six points in R^4 whose Rips complex misses exactly the pairs {v_i, v_{i+3}}.

    Even points lie in the first complex coordinate at radius ``c``; odd points
    are lifted by ``eps`` in the second complex coordinate along the same
    direction.  conv{v0, v2, v4} and conv{v1, v3, v5} meet at the origin.
    """
    c, eps = Fraction(c), Fraction(eps)
    if c <= 0 or eps <= 0:
        raise CertificateError("c and eps must be positive")
    pts = []
    for k, (x, y) in enumerate(_hexagon_directions()):
        lift = (eps * x, eps * y) if k % 2 else (Fraction(0), Fraction(0))
        pts.append((c * x, c * y) + lift)
    for i, j in combinations(range(6), 2):
        far = (j - i) == 3
        close = dist_lt(pts[i], pts[j], 1)
        if far == close:
            raise CertificateError(
                f"pair ({i},{j}) should be {'far' if far else 'close'} for c={c}, eps={eps}"
            )
    return PointCloud(tuple(pts), Fraction(1), True, EUCLIDEAN)


def product_metric_configuration(eta=Fraction(1, 50)):
    """Triangle in the plane x=0 pierced by an orthogonal segment, shrunk by 1 - eta.

    Returns ``(points, metric, scale)`` with points ordered A, B, C, P, Q.  The
    certificate demands the four in-group distances below the scale and the
    six cross distances at or above it under the product metric, so no apex
    exists.
    """
    eta = Fraction(eta)
    if not 0 <= eta < 1:
        raise CertificateError("eta must lie in [0, 1)")
    k = 1 - eta
    rad = Fraction(1 / math.sqrt(3)).limit_denominator(10**6)  # circumradius of the unit triangle
    tri = [(Fraction(0), rad, Fraction(0))]
    tri.append((Fraction(0), -rad / 2, Fraction(1, 2)))
    tri.append((Fraction(0), -rad / 2, Fraction(-1, 2)))
    seg = [(Fraction(1, 2), Fraction(0), Fraction(0)), (Fraction(-1, 2), Fraction(0), Fraction(0))]
    pts = [tuple(k * c for c in p) for p in tri + seg]
    scale = Fraction(1)
    metric = PRODUCT_L1_L2
    groups = [(0, 1), (0, 2), (1, 2), (3, 4)]
    for i, j in groups:
        if not dist_lt(pts[i], pts[j], scale, True, metric):
            raise CertificateError(f"in-group pair ({i},{j}) not below the scale")
    for i in range(3):
        for j in (3, 4):
            if dist_lt(pts[i], pts[j], scale, True, metric):
                raise CertificateError(f"cross pair ({i},{j}) below the scale")
    if find_apex(*pts, r=scale, metric=metric) is not None:
        raise CertificateError("configuration unexpectedly has an apex")
    return tuple(pts), metric, scale


def _circle_point(theta: float, den: int) -> tuple:
    # rational point on the circle of radius 1/2 via t = tan(theta/2)
    t = Fraction(math.tan(theta / 2)).limit_denominator(den)
    q = 1 + t * t
    return ((1 - t * t) / (2 * q), t / q)


def crosspolytope_cloud(d: int, den: int = 10**4) -> PointCloud:
    """Rational near-regular 2(d+1)-gon on the circle of radius 1/2 at scale 1.

    The points lie exactly on that circle and come in exact antipodal pairs,
    so antipodes are at distance exactly 1 and every other pair strictly
    closer: the strict Rips complex is the crosspolytope boundary O_d.
    """
    if d < 1:
        raise CertificateError("d must be >= 1")
    m = d + 1
    half = [_circle_point(math.pi * k / m, den) for k in range(m)]
    pts = []
    for p in half:
        pts.append(p)
    for p in half:
        pts.append((-p[0], -p[1]))
    if len(set(pts)) != len(pts):
        raise CertificateError("rounding merged two points; raise den")
    for i, j in combinations(range(len(pts)), 2):
        antipodal = (j - i) == m
        if antipodal == dist_lt(pts[i], pts[j], 1):
            raise CertificateError(f"pair ({i},{j}) breaks the crosspolytope pattern")
    return PointCloud(tuple(pts), Fraction(1), True, EUCLIDEAN)


GALLERY = {
    "lifted-hexagon": lifted_hexagon_cloud,
    "product-metric": product_metric_configuration,
    "crosspolytope": crosspolytope_cloud,
}
