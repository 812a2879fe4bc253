"""Topology of the shadow through the nerve of its convex pieces.

The shadow is covered by the convex hulls of the maximal Rips faces.  All
finite intersections of convex sets are convex, so the nerve of this cover
has the homotopy type of the shadow; nerve faces are decided by exact LPs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .geometry import GeometryError, Point, common_point, hull_contains
from .homology import homology
from .simplicial import PointCloud, SimplicialComplex, _components, rips_complex

__all__ = [
    "ConvexPiece",
    "CoverNerve",
    "HullOracle",
    "shadow_pieces",
    "multi_hull_common_point",
    "nerve",
    "shadow_betti",
    "shadow_contains",
    "piece_graph_components",
]


@dataclass(frozen=True)
class ConvexPiece:
    """conv of a Rips face; ``generators`` are vertex ids, ``coords`` their points."""

    generators: tuple
    coords: tuple


class HullOracle:
    """Memoised common-point tests between hulls of vertex-id sets of one cloud.

    Cheap exact filters run before any LP: a vertex shared by every set
    gives a common point, and a pair of disjoint hulls rules one out.
    """

    def __init__(self, cloud: PointCloud):
        self.cloud = cloud
        self._cache: dict = {}
        self.lp_calls = 0

    def common(self, *sets) -> bool:
        key = frozenset(tuple(sorted(s)) for s in sets)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        groups = sorted(key)
        if len(groups) == 1:
            res = True
        else:
            shared = set(groups[0])
            for g in groups[1:]:
                shared &= set(g)
            if shared:
                res = True
            elif len(groups) > 2 and not all(self.common(a, b) for a, b in combinations(groups, 2)):
                res = False
            else:
                self.lp_calls += 1
                pt = self.cloud.point
                res = common_point([[pt(v) for v in g] for g in groups]) is not None
        self._cache[key] = res
        return res


def shadow_pieces(cloud: PointCloud) -> list:
    """One convex piece per maximal face of the Rips complex."""
    if cloud.metric.kind != "euclidean":
        raise GeometryError("shadows are only defined for the Euclidean metric")
    K = rips_complex(cloud)
    return [ConvexPiece(f, tuple(cloud.point(v) for v in f)) for f in K.facets]


def multi_hull_common_point(pieces: Sequence[ConvexPiece]) -> bool:
    """Exact test for a single point lying in every piece."""
    if not pieces:
        raise GeometryError("need at least one piece")
    shared = set(pieces[0].generators)
    for p in pieces[1:]:
        shared &= set(p.generators)
    if shared:
        return True
    return common_point([list(p.coords) for p in pieces]) is not None


@dataclass
class CoverNerve:
    pieces: list
    complex: SimplicialComplex


def nerve(pieces: Sequence[ConvexPiece], q: int, oracle: Optional[HullOracle] = None) -> CoverNerve:
    """Nerve of the pieces up to dimension ``q``.

    A (k+1)-subset is tested only when all of its k-subsets are already nerve
    faces.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    gens = [p.generators for p in pieces]

    def test(idx):
        if oracle is not None:
            return oracle.common(*(gens[i] for i in idx))
        return multi_hull_common_point([pieces[i] for i in idx])

    faces = [(i,) for i in range(len(pieces))]
    layer = set(faces)
    for k in range(1, q + 1):
        nxt = set()
        for f in sorted(layer):
            for j in range(f[-1] + 1, len(pieces)):
                cand = f + (j,)
                if all(cand[:i] + cand[i + 1 :] in layer for i in range(len(cand) - 1)) and test(cand):
                    nxt.add(cand)
        if not nxt:
            break
        faces.extend(sorted(nxt))
        layer = nxt
    return CoverNerve(list(pieces), SimplicialComplex(faces, cap=q))


def shadow_betti(cloud: PointCloud, up_to: int = 1, oracle: Optional[HullOracle] = None) -> list:
    """Betti numbers of the shadow in degrees 0..up_to."""
    if up_to > cloud.dim:
        raise ValueError("shadows in R^n carry no homology above degree n")
    pieces = shadow_pieces(cloud)
    if not pieces:
        return [0] * (up_to + 1)
    N = nerve(pieces, up_to + 1, oracle or HullOracle(cloud))
    prof = homology(N.complex, up_to)
    return prof.betti + [0] * (up_to + 1 - len(prof.betti))


def shadow_contains(cloud: PointCloud, x: Point) -> bool:
    return any(hull_contains(tuple(x), list(p.coords)) for p in shadow_pieces(cloud))


def piece_graph_components(pieces: Sequence[ConvexPiece], oracle: Optional[HullOracle] = None) -> int:
    """Components of the graph on pieces with an edge for each intersecting pair."""
    edges = []
    for i, j in combinations(range(len(pieces)), 2):
        if oracle is not None:
            ok = oracle.common(pieces[i].generators, pieces[j].generators)
        else:
            ok = multi_hull_common_point([pieces[i], pieces[j]])
        if ok:
            edges.append((i, j))
    return _components(range(len(pieces)), edges)
