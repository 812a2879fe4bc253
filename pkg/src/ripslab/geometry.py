"""Exact rational points, the two supported metrics and convex-hull predicates.

Every comparison is carried out on :class:`fractions.Fraction` values.  Where
a square root would appear (Euclidean distances, the L2 half of the product
metric) both sides are squared after checking their signs, so predicates
never depend on floating point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, NamedTuple, Optional, Sequence

from .lp import lp_solve

Point = tuple  # tuple of Fraction

__all__ = [
    "Point",
    "Metric",
    "EUCLIDEAN",
    "PRODUCT_L1_L2",
    "GeometryError",
    "as_point",
    "sq_dist",
    "dist_lt",
    "diameter_lt",
    "common_point",
    "hull_contains",
    "hulls_intersect",
    "find_apex",
    "segment_triangle_intersect",
    "HullReduction",
    "reduce_hull_intersection",
    "orient2d",
    "segments_intersect",
    "point_in_polygon",
    "VisibleEdge",
    "visible_edge",
]


class GeometryError(ValueError):
    """Bad geometric input: dimension mismatch, empty sets, broken preconditions."""


@dataclass(frozen=True)
class Metric:
    """Distance on R^n.

    ``kind`` is ``"euclidean"`` or ``"product_l1_l2"``.  For the product metric
    the coordinates before ``split`` form the R^1 factor (measured with
    absolute value) and the rest the Euclidean R^2 factor; it only makes sense
    in dimension 3 with ``split == 1``.
    """

    kind: str = "euclidean"
    split: int = 1

    def __post_init__(self):
        if self.kind not in ("euclidean", "product_l1_l2"):
            raise GeometryError(f"unknown metric {self.kind!r}")
        if self.kind == "product_l1_l2" and self.split != 1:
            raise GeometryError("product metric needs split == 1 (R^1 x R^2)")

    def check_dim(self, n: int) -> None:
        if self.kind == "product_l1_l2" and n != 3:
            raise GeometryError("product metric is only defined on R^3")


EUCLIDEAN = Metric()
PRODUCT_L1_L2 = Metric("product_l1_l2", 1)


def as_point(coords: Iterable) -> Point:
    """Convert numbers or ``"num/den"`` strings to a tuple of Fractions."""
    p = tuple(Fraction(c) for c in coords)
    if not p:
        raise GeometryError("points need dimension >= 1")
    return p


def _same_dim(p: Point, q: Point) -> None:
    if len(p) != len(q):
        raise GeometryError(f"dimension mismatch: {len(p)} vs {len(q)}")


def sq_dist(p: Point, q: Point) -> Fraction:
    """Exact squared Euclidean distance."""
    _same_dim(p, q)
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def dist_lt(p: Point, q: Point, r, strict: bool = True, metric: Metric = EUCLIDEAN) -> bool:
    """``d(p, q) < r`` (or ``<= r`` when ``strict`` is False), decided exactly."""
    r = Fraction(r)
    if r <= 0:
        raise GeometryError("scale must be positive")
    _same_dim(p, q)
    if metric.kind == "euclidean":
        d2 = sq_dist(p, q)
        return d2 < r * r if strict else d2 <= r * r
    metric.check_dim(len(p))
    s = metric.split
    a = sum((abs(x - y) for x, y in zip(p[:s], q[:s])), Fraction(0))
    if a > r or (strict and a == r):
        return False
    b2 = sum(((x - y) ** 2 for x, y in zip(p[s:], q[s:])), Fraction(0))
    slack = (r - a) ** 2
    return b2 < slack if strict else b2 <= slack


def diameter_lt(points: Sequence[Point], r, strict: bool = True, metric: Metric = EUCLIDEAN) -> bool:
    if not points:
        raise GeometryError("diameter of an empty set")
    return all(dist_lt(p, q, r, strict, metric) for p, q in combinations(points, 2))


def common_point(hulls: Sequence[Sequence[Point]]) -> Optional[Point]:
    """A point lying in the convex hull of every generator set, or ``None``.

    One LP: a block of convex-combination weights per hull, one convexity row
    per hull and ``n`` rows tying each hull's combination to the first one.
    """
    if not hulls or any(len(h) == 0 for h in hulls):
        raise GeometryError("hulls need at least one generator")
    n = len(hulls[0][0])
    for h in hulls:
        for p in h:
            if len(p) != n:
                raise GeometryError("dimension mismatch among generators")
    if len(hulls) == 1:
        return tuple(hulls[0][0])
    # cheap exact shortcut: a generator shared by every hull
    shared = set(hulls[0])
    for h in hulls[1:]:
        shared &= set(h)
        if not shared:
            break
    if shared:
        return min(shared)

    sizes = [len(h) for h in hulls]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    nvar = offsets[-1]
    A, b = [], []
    first = hulls[0]
    for k in range(1, len(hulls)):
        hk = hulls[k]
        for c in range(n):
            row = [0] * nvar
            for i, g in enumerate(first):
                row[i] = g[c]
            for i, g in enumerate(hk):
                row[offsets[k] + i] = -g[c]
            A.append(row)
            b.append(0)
    for k, s in enumerate(sizes):
        row = [0] * nvar
        for i in range(s):
            row[offsets[k] + i] = 1
        A.append(row)
        b.append(1)
    sol = lp_solve(A, b)
    if sol is None:
        return None
    return tuple(
        sum((sol[i] * g[c] for i, g in enumerate(first)), Fraction(0)) for c in range(n)
    )


def hull_contains(x: Point, gens: Sequence[Point]) -> bool:
    """Exact membership of ``x`` in conv(gens)."""
    if not gens:
        raise GeometryError("empty generator set")
    for g in gens:
        _same_dim(x, g)
    return common_point([[tuple(x)], list(gens)]) is not None


def hulls_intersect(gens_a: Sequence[Point], gens_b: Sequence[Point]) -> bool:
    return common_point([list(gens_a), list(gens_b)]) is not None


APEX_LABELS = ("A", "B", "C", "P", "Q")


def find_apex(A, B, C, P, Q, r=1, metric: Metric = EUCLIDEAN, strict: bool = True) -> Optional[str]:
    """First label in A, B, C, P, Q whose point is within ``r`` of the other four.

    Plain enumeration; the labels are tried in that fixed order.
    """
    pts = (A, B, C, P, Q)
    for p in pts[1:]:
        _same_dim(A, p)
    for i, lab in enumerate(APEX_LABELS):
        if all(dist_lt(pts[i], pts[j], r, strict, metric) for j in range(5) if j != i):
            return lab
    return None


def segment_triangle_intersect(P, Q, A, B, C) -> bool:
    """Does conv{P,Q} meet conv{A,B,C} in R^3?  Degenerate shapes allowed."""
    pts = (P, Q, A, B, C)
    if any(len(p) != 3 for p in pts):
        raise GeometryError("segment_triangle_intersect works in R^3")
    return hulls_intersect([P, Q], [A, B, C])


class HullReduction(NamedTuple):
    """Outcome of :func:`reduce_hull_intersection`.

    ``kind`` is one of ``"a_in_b"``, ``"b_in_a"``, ``"tri_a_seg_b"`` or
    ``"tri_b_seg_a"``; for the last two ``triangle`` and ``segment`` hold
    generator indices (repetitions allowed) into the respective sets.
    """

    kind: str
    triangle: Optional[tuple] = None
    segment: Optional[tuple] = None


def reduce_hull_intersection(gens_a: Sequence[Point], gens_b: Sequence[Point]) -> HullReduction:
    """Classify a pair of intersecting hulls with at most four generators each.

    Either one hull contains the other, or some (possibly degenerate)
    triangle on one side meets some segment on the other.  Containment is
    checked first, then triangles of ``gens_a`` against segments of
    ``gens_b`` in lexicographic index order, then the swapped family.
    """
    if len(gens_a) > 4 or len(gens_b) > 4:
        raise GeometryError("at most four generators per hull")
    if not gens_a or not gens_b:
        raise GeometryError("empty generator set")
    if not hulls_intersect(gens_a, gens_b):
        raise GeometryError("hulls are disjoint")
    if all(hull_contains(a, gens_b) for a in gens_a):
        return HullReduction("a_in_b")
    if all(hull_contains(b, gens_a) for b in gens_b):
        return HullReduction("b_in_a")
    for tri_set, seg_set, kind in ((gens_a, gens_b, "tri_a_seg_b"), (gens_b, gens_a, "tri_b_seg_a")):
        for tri in combinations_with_replacement(range(len(tri_set)), 3):
            tri_pts = [tri_set[i] for i in tri]
            for seg in combinations_with_replacement(range(len(seg_set)), 2):
                if hulls_intersect(tri_pts, [seg_set[j] for j in seg]):
                    return HullReduction(kind, tri, seg)
    # unreachable for inputs in R^1..R^3; kept as a loud failure
    raise GeometryError("no triangle/segment witness found")


# ---------------------------------------------------------------------------
# planar helpers


def orient2d(a, b, c) -> int:
    """Sign of the signed area of triangle abc."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p, a, b) -> bool:
    return (
        orient2d(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share a point."""
    o1, o2 = orient2d(a, b, c), orient2d(a, b, d)
    o3, o4 = orient2d(c, d, a), orient2d(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return _on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d) or _on_segment(b, c, d)


def point_in_polygon(x, polygon: Sequence[Point]) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (even-odd rule)."""
    m = len(polygon)
    for i in range(m):
        if _on_segment(x, polygon[i], polygon[(i + 1) % m]):
            return 0
    inside = False
    for i in range(m):
        a, b = polygon[i], polygon[(i + 1) % m]
        if (a[1] > x[1]) != (b[1] > x[1]):
            # x-coordinate of the crossing, compared without division
            lhs = (x[0] - a[0]) * (b[1] - a[1])
            rhs = (x[1] - a[1]) * (b[0] - a[0])
            if (b[1] - a[1] > 0 and lhs < rhs) or (b[1] - a[1] < 0 and lhs > rhs):
                inside = not inside
    return 1 if inside else -1


def _check_simple(polygon: Sequence[Point]) -> None:
    m = len(polygon)
    if m < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    if len(set(polygon)) != m:
        raise GeometryError("polygon has repeated vertices")
    for i in range(m):
        a, s, d = polygon[i], polygon[(i + 1) % m], polygon[(i + 2) % m]
        # consecutive edges folding back onto each other
        if orient2d(a, s, d) == 0 and (a[0] - s[0]) * (d[0] - s[0]) + (a[1] - s[1]) * (d[1] - s[1]) > 0:
            raise GeometryError(f"edges {i} and {(i + 1) % m} overlap")
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            if segments_intersect(polygon[i], polygon[i + 1], polygon[j], polygon[(j + 1) % m]):
                raise GeometryError(f"polygon is not simple: edges {i} and {j} meet")


def _ray_hits_beyond(v, P, a, b) -> bool:
    """Does the open ray from P in direction P - v meet the closed segment ab?"""
    dx, dy = P[0] - v[0], P[1] - v[1]
    ex, ey = b[0] - a[0], b[1] - a[1]
    den = dx * ey - dy * ex
    wx, wy = a[0] - P[0], a[1] - P[1]
    if den == 0:
        if wx * dy - wy * dx != 0:
            return False  # parallel, not collinear
        # collinear: project endpoints on the ray parameter
        dd = dx * dx + dy * dy
        ta = ((a[0] - P[0]) * dx + (a[1] - P[1]) * dy) / dd
        tb = ((b[0] - P[0]) * dx + (b[1] - P[1]) * dy) / dd
        return max(ta, tb) > 0
    t = (wx * ey - wy * ex) / den
    s = (wx * dy - wy * dx) / den
    return t > 0 and 0 <= s <= 1


class VisibleEdge(NamedTuple):
    """``edge`` is a pair of consecutive polygon indices, or ``None`` with a reason."""

    edge: Optional[tuple]
    diagnostic: str = ""


def visible_edge(polygon: Sequence[Point], v: Point) -> VisibleEdge:
    """The single polygon edge seen from an outside point ``v``.

    Requires that for every vertex P the ray from ``v`` through P meets the
    polygon only between ``v`` and P.  Returns an edge AB such that every
    segment vP meets AB, or ``None`` with a diagnostic when that ray
    condition fails.
    """
    polygon = [tuple(Fraction(c) for c in p) for p in polygon]
    v = tuple(Fraction(c) for c in v)
    if len(v) != 2 or any(len(p) != 2 for p in polygon):
        raise GeometryError("visible_edge works in the plane")
    _check_simple(polygon)
    m = len(polygon)
    loc = point_in_polygon(v, polygon)
    if loc > 0:
        raise GeometryError("v lies strictly inside the polygon")
    if loc == 0:
        for i in range(m):
            if polygon[i] == v:
                return VisibleEdge((i, (i + 1) % m), "v is a polygon vertex")
        for i in range(m):
            if _on_segment(v, polygon[i], polygon[(i + 1) % m]):
                return VisibleEdge((i, (i + 1) % m), "v lies on this edge")
    for pi, P in enumerate(polygon):
        for i in range(m):
            a, b = polygon[i], polygon[(i + 1) % m]
            if _ray_hits_beyond(v, P, a, b):
                return VisibleEdge(None, f"ray through vertex {pi} meets edge {i} beyond the vertex")
    for i in range(m):
        a, b = polygon[i], polygon[(i + 1) % m]
        if all(segments_intersect(v, P, a, b) for P in polygon):
            return VisibleEdge((i, (i + 1) % m))
    return VisibleEdge(None, "no edge meets every segment from v")
