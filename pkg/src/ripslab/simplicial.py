"""Point clouds, Rips (flag) complexes and combinatorial recognisers.

Complexes are stored by their maximal faces.  Vertex ids of a Rips complex
are indices into the point cloud, never coordinates, so coincident points
stay distinct vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import lcm
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np

from .geometry import EUCLIDEAN, GeometryError, Metric, Point, as_point, dist_lt

__all__ = [
    "PointCloud",
    "SimplicialComplex",
    "Decomposition",
    "PseudomanifoldReport",
    "adjacency",
    "proximity_graph",
    "maximal_cliques",
    "flag_complex",
    "rips_complex",
    "decompose",
    "link",
    "star",
    "induced",
    "suspension",
    "crosspolytope",
    "is_isomorphic_to_crosspolytope",
    "is_normal_pseudomanifold",
    "is_closed_surface",
    "f_vector",
    "dominated_core",
    "is_connected",
]


@dataclass(frozen=True)
class PointCloud:
    """Finite point set with a scale.  ``ids`` are the vertex ids (default 0..N-1)."""

    points: tuple
    scale: Fraction = Fraction(1)
    strict: bool = True
    metric: Metric = EUCLIDEAN
    ids: Optional[tuple] = None

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise GeometryError("scale must be positive")
        if pts:
            n = len(pts[0])
            if any(len(p) != n for p in pts):
                raise GeometryError("points of mixed dimension")
            self.metric.check_dim(n)
        ids = tuple(range(len(pts))) if self.ids is None else tuple(self.ids)
        if len(ids) != len(pts) or len(set(ids)) != len(ids):
            raise GeometryError("ids must be distinct, one per point")
        object.__setattr__(self, "ids", ids)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def point(self, vid) -> Point:
        return self.points[self._index[vid]]

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.ids)}

    def subcloud(self, vids: Iterable) -> "PointCloud":
        keep = sorted(set(vids), key=self._index.__getitem__)
        return PointCloud(
            tuple(self.point(v) for v in keep), self.scale, self.strict, self.metric, tuple(keep)
        )

    def with_scale(self, scale) -> "PointCloud":
        return PointCloud(self.points, scale, self.strict, self.metric, self.ids)


# ---------------------------------------------------------------------------
# proximity graph


def _integer_coords(points: Sequence[Point], scale: Fraction):
    den = scale.denominator
    for p in points:
        for c in p:
            den = lcm(den, c.denominator)
    coords = [[int(c * den) for c in p] for p in points]
    return coords, int(scale * den)


def _as_array(coords, bound: int):
    # int64 is exact while every squared distance sum stays below 2**62
    n = len(coords[0]) if coords else 1
    if 4 * bound * bound * n < 2**62:
        return np.array(coords, dtype=np.int64)
    return np.array(coords, dtype=object)


def adjacency(cloud: PointCloud) -> dict:
    """Neighbour sets of the proximity graph, keyed by vertex id."""
    ids = cloud.ids
    adj = {v: set() for v in ids}
    N = len(ids)
    if N < 2:
        return adj
    if cloud.metric.kind != "euclidean":
        for i, j in combinations(range(N), 2):
            if dist_lt(cloud.points[i], cloud.points[j], cloud.scale, cloud.strict, cloud.metric):
                adj[ids[i]].add(ids[j])
                adj[ids[j]].add(ids[i])
        return adj
    coords, r = _integer_coords(cloud.points, cloud.scale)
    bound = max(max(abs(c) for row in coords for c in row), r)
    X = _as_array(coords, bound)
    r2 = r * r
    if N <= 400:
        pairs = None
    else:
        from scipy.spatial import cKDTree

        Xf = np.array([[float(c) for c in p] for p in cloud.points])
        span = float(np.abs(Xf).max()) + float(cloud.scale)
        tree = cKDTree(Xf)
        pairs = tree.query_pairs(float(cloud.scale) * (1 + 1e-9) + 1e-9 * span, output_type="ndarray")
    if pairs is None:
        for i in range(N - 1):
            diff = X[i + 1 :] - X[i]
            d2 = (diff * diff).sum(axis=1)
            close = d2 < r2 if cloud.strict else d2 <= r2
            for k in np.nonzero(close)[0]:
                j = i + 1 + int(k)
                adj[ids[i]].add(ids[j])
                adj[ids[j]].add(ids[i])
    elif len(pairs):
        diff = X[pairs[:, 0]] - X[pairs[:, 1]]
        d2 = (diff * diff).sum(axis=1)
        close = d2 < r2 if cloud.strict else d2 <= r2
        for i, j in pairs[np.nonzero(close)[0]]:
            adj[ids[i]].add(ids[j])
            adj[ids[j]].add(ids[i])
    return adj


def proximity_graph(cloud: PointCloud) -> list:
    """Sorted edge list ``(i, j)``, ``i < j``, of pairs closer than the scale."""
    adj = adjacency(cloud)
    return sorted((u, w) for u in adj for w in adj[u] if u < w)


def maximal_cliques(adj: dict) -> list:
    """All maximal cliques (Bron-Kerbosch with greedy pivot), canonically sorted.

    Iterative, so cliques of any size are fine.
    """
    out = []
    # each frame: clique so far, candidates, excluded, branch vertices still to try
    stack = [([], set(adj), set(), None)]
    while stack:
        R, P, X, todo = stack.pop()
        if todo is None:
            if not P and not X:
                out.append(tuple(sorted(R)))
                continue
            # pivot maximising |P & N(u)|, lowest id on ties
            pivot = min(P | X, key=lambda u: (-len(P & adj[u]), u))
            todo = sorted(P - adj[pivot], reverse=True)
        if not todo:
            continue
        v = todo.pop()
        stack.append((R, P - {v}, X | {v}, todo))
        stack.append((R + [v], P & adj[v], X & adj[v], None))
    out.sort()
    return out


def dominated_core(adj: dict) -> dict:
    """Strip dominated vertices until none is left.

    A vertex whose closed neighbourhood sits inside another vertex's closed
    neighbourhood has a cone as its link in the flag complex; deleting it
    keeps the homotopy type.  Returns the induced adjacency on the core.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            nv = adj[v]
            if not nv:
                continue
            closed = nv | {v}
            for u in sorted(nv, key=lambda w: (-len(adj[w]), w)):
                if len(adj[u]) < len(nv):
                    break
                if closed <= adj[u] | {u}:
                    for w in nv:
                        adj[w].discard(v)
                    del adj[v]
                    changed = True
                    break
    return adj


# ---------------------------------------------------------------------------
# complexes


def _maximal(faces: Iterable[tuple]) -> list:
    uniq = sorted({tuple(sorted(f)) for f in faces if len(f)}, key=lambda f: (-len(f), f))
    kept: list = []
    by_vertex: dict = {}
    for f in uniq:
        cands = by_vertex.get(f[0], ())
        fs = set(f)
        if any(fs <= g for g in cands):
            continue
        kept.append(f)
        g = frozenset(f)
        for v in f:
            by_vertex.setdefault(v, []).append(g)
    kept.sort()
    return kept


class SimplicialComplex:
    """Abstract simplicial complex given by its maximal faces.

    ``cap`` optionally truncates the complex: faces of dimension above it are
    considered absent.
    """

    def __init__(self, faces: Iterable = (), vertices: Iterable = (), cap: Optional[int] = None, *, maximal: bool = False):
        faces = [tuple(sorted(f)) for f in faces]
        extra = [(v,) for v in vertices]
        self._facets = tuple(sorted(set(faces))) if maximal and not extra else tuple(_maximal(faces + extra))
        self.cap = cap
        self._face_cache: dict = {}

    # -- basic shape
    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self._facets for v in f}))

    @property
    def dim(self) -> int:
        if not self._facets:
            return -1
        d = max(len(f) for f in self._facets) - 1
        return d if self.cap is None else min(d, self.cap)

    @cached_property
    def facets(self) -> tuple:
        """Maximal faces after truncation."""
        if self.cap is None or all(len(f) <= self.cap + 1 for f in self._facets):
            return self._facets
        out = set()
        for f in self._facets:
            if len(f) <= self.cap + 1:
                out.add(f)
            else:
                out.update(combinations(f, self.cap + 1))
        return tuple(_maximal(out))

    def faces(self, k: int) -> list:
        """Sorted list of the k-dimensional faces."""
        if k < 0 or (self.cap is not None and k > self.cap):
            return []
        if k not in self._face_cache:
            out = set()
            for f in self._facets:
                if len(f) > k:
                    out.update(combinations(f, k + 1))
            self._face_cache[k] = sorted(out)
        return self._face_cache[k]

    def all_faces(self, max_dim: Optional[int] = None) -> list:
        top = self.dim if max_dim is None else min(self.dim, max_dim)
        return [f for k in range(top + 1) for f in self.faces(k)]

    def __contains__(self, face) -> bool:
        s = set(face)
        if not s:
            return True
        if self.cap is not None and len(s) > self.cap + 1:
            return False
        return any(s <= set(f) for f in self._facets)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def edges(self) -> list:
        return self.faces(1)

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for a, b in self.faces(1):
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_flag(self) -> bool:
        """Faces are exactly the cliques of the 1-skeleton."""
        return set(maximal_cliques(self.adjacency())) == set(self.facets)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)


def f_vector(K: SimplicialComplex, max_dim: Optional[int] = None) -> list:
    top = K.dim if max_dim is None else min(K.dim, max_dim)
    return [len(K.faces(k)) for k in range(top + 1)]


def flag_complex(adj: dict, cap: Optional[int] = None) -> SimplicialComplex:
    return SimplicialComplex(maximal_cliques(adj), cap=cap, maximal=True)


def rips_complex(cloud: PointCloud, max_dim: Optional[int] = None) -> SimplicialComplex:
    """Clique complex of the proximity graph, optionally truncated."""
    return flag_complex(adjacency(cloud), cap=max_dim)


def link(K: SimplicialComplex, v) -> SimplicialComplex:
    if v not in K.vertices:
        raise KeyError(f"vertex {v!r} not in complex")
    return face_link(K, (v,))


def face_link(K: SimplicialComplex, sigma: Sequence) -> SimplicialComplex:
    s = set(sigma)
    faces = [tuple(x for x in f if x not in s) for f in K.facets if s <= set(f)]
    return SimplicialComplex([f for f in faces if f])


def star(K: SimplicialComplex, v) -> SimplicialComplex:
    """Closed star of a vertex."""
    if v not in K.vertices:
        raise KeyError(f"vertex {v!r} not in complex")
    return SimplicialComplex([f for f in K.facets if v in f], maximal=True)


def induced(K: SimplicialComplex, S: Iterable) -> SimplicialComplex:
    s = set(S)
    if not s <= set(K.vertices):
        raise KeyError("induced subcomplex on vertices outside the complex")
    return SimplicialComplex([tuple(v for v in f if v in s) for f in K.facets])


def suspension(K: SimplicialComplex, north: Hashable, south: Hashable) -> SimplicialComplex:
    return SimplicialComplex([f + (p,) for f in K.facets for p in (north, south)])


def crosspolytope(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-crosspolytope; antipodal pairs are (2i, 2i+1)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    facets = [tuple(2 * i + c for i, c in enumerate(choice)) for choice in product((0, 1), repeat=d + 1)]
    return SimplicialComplex(facets, maximal=True)


def is_isomorphic_to_crosspolytope(K: SimplicialComplex) -> Optional[int]:
    """Return d when K is the boundary of the (d+1)-crosspolytope, else None.

    K must be the flag complex of a complete graph minus a perfect matching,
    i.e. its facets are exactly the transversals of the missing edges.
    """
    V = K.vertices
    if not V or len(V) % 2:
        return None
    adj = K.adjacency()
    partner = {}
    for v in V:
        missing = [u for u in V if u != v and u not in adj[v]]
        if len(missing) != 1:
            return None
        partner[v] = missing[0]
    m = len(V) // 2
    facets = K.facets
    if len(facets) != 2**m or any(len(f) != m for f in facets):
        return None
    for f in facets:
        if any(partner[a] in f for a in f):
            return None
    return m - 1


@dataclass
class PseudomanifoldReport:
    is_pm: bool
    dim: int
    violations: list = field(default_factory=list)


def _components(vertices: Iterable, faces: Iterable) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in faces:
        r0 = find(f[0])
        for x in f[1:]:
            rx = find(x)
            if rx != r0:
                parent[rx] = r0
    return len({find(v) for v in parent})


def is_connected(K: SimplicialComplex) -> bool:
    return bool(K.vertices) and _components(K.vertices, K.facets) == 1


def is_normal_pseudomanifold(K: SimplicialComplex) -> PseudomanifoldReport:
    """Pure, connected, every ridge in two facets, links connected up to codim 2."""
    d = K.dim
    bad = []
    if d < 1:
        return PseudomanifoldReport(False, d, ["dimension below 1"])
    facets = K.facets
    if any(len(f) != d + 1 for f in facets):
        bad.append("not pure")
    if not is_connected(K):
        bad.append("not connected")
    count: dict = {}
    for f in facets:
        for r in combinations(f, d):
            count[r] = count.get(r, 0) + 1
    for r in sorted(count):
        if count[r] != 2:
            bad.append(f"ridge {r} lies in {count[r]} facets")
    for k in range(0, d - 1):
        for sigma in K.faces(k):
            lk = face_link(K, sigma)
            if not is_connected(lk):
                bad.append(f"link of {sigma} is disconnected")
    return PseudomanifoldReport(not bad, d, bad)


def _is_cycle(L: SimplicialComplex) -> bool:
    if L.dim != 1 or any(len(f) != 2 for f in L.facets):
        return False
    deg: dict = {}
    for a, b in L.facets:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(x == 2 for x in deg.values()) and is_connected(L)


def is_closed_surface(K: SimplicialComplex) -> bool:
    """Pure 2-dim, connected, each edge in two triangles, each vertex link a cycle."""
    if K.dim != 2 or any(len(f) != 3 for f in K.facets) or not is_connected(K):
        return False
    count: dict = {}
    for f in K.facets:
        for e in combinations(f, 2):
            count[e] = count.get(e, 0) + 1
    if any(c != 2 for c in count.values()):
        return False
    return all(_is_cycle(link(K, v)) for v in K.vertices)


# ---------------------------------------------------------------------------
# X_v / X^v / X - v


@dataclass(frozen=True)
class Decomposition:
    """Link, star and deletion sub-clouds around vertex ``v``."""

    v: Hashable
    x_v: PointCloud
    x_sup_v: PointCloud
    x_minus_v: PointCloud


def decompose(cloud: PointCloud, v) -> Decomposition:
    if v not in cloud.ids:
        raise KeyError(f"vertex {v!r} not in cloud")
    pv = cloud.point(v)
    near = [
        u
        for u, p in zip(cloud.ids, cloud.points)
        if u != v and dist_lt(pv, p, cloud.scale, cloud.strict, cloud.metric)
    ]
    return Decomposition(
        v,
        cloud.subcloud(near),
        cloud.subcloud(near + [v]),
        cloud.subcloud(u for u in cloud.ids if u != v),
    )
