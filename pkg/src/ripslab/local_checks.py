"""Instance-level checks of the local and global statements about shadows.

``check_pi0_surjectivity`` decides whether every connected component of
S(X^v) & S(X - v) reaches S(X_v).  The intersection is the union of the
convex sets conv(A) & conv(B) over maximal faces A of R(X^v) and B of
R(X - v); these pieces are never built explicitly, every question about
them is a joint LP over three or four hulls.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from .homology import homology
from .shadow import HullOracle, shadow_betti
from .simplicial import (
    PointCloud,
    SimplicialComplex,
    adjacency,
    f_vector,
    flag_complex,
    induced,
    is_closed_surface,
    is_isomorphic_to_crosspolytope,
    is_normal_pseudomanifold,
    link,
    maximal_cliques,
)
from .homology import component_count

__all__ = [
    "LocalPi0Report",
    "check_pi0_surjectivity",
    "BettiReport",
    "betti_consequences",
    "TheoremViolation",
    "PlanarClassification",
    "classify_planar_pseudomanifold",
    "SurfaceEdgeReport",
    "surface_edge_bound_check",
]


class TheoremViolation(RuntimeError):
    """A configuration contradicting a proven statement.  ``dump`` holds the instance."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass
class LocalPi0Report:
    vertex: int
    pieces_total: int
    components_total: int
    components_with_link_piece: int
    passed: bool
    witness: list = field(default_factory=list)
    lp_calls: int = 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["witness"] = [[list(a), list(b)] for a, b in self.witness]
        return d


def _induced_adj(adj: dict, keep) -> dict:
    keep = set(keep)
    return {u: adj[u] & keep for u in keep}


def check_pi0_surjectivity(
    cloud: PointCloud, v, adj: Optional[dict] = None, oracle: Optional[HullOracle] = None
) -> LocalPi0Report:
    """Does every component of S(X^v) & S(X - v) contain a point of S(X_v)?"""
    if v not in cloud.ids:
        raise KeyError(f"vertex {v!r} not in cloud")
    adj = adjacency(cloud) if adj is None else adj
    oracle = oracle or HullOracle(cloud)
    near = adj[v]
    others = [u for u in cloud.ids if u != v]
    link_faces = maximal_cliques(_induced_adj(adj, near)) if near else []
    star_faces = [tuple(sorted(c + (v,))) for c in link_faces] or [(v,)]
    rest_faces = maximal_cliques(_induced_adj(adj, others)) if others else []

    pieces = [(A, B) for A in star_faces for B in rest_faces if oracle.common(A, B)]
    marked = []
    for A, B in pieces:
        if set(A) & set(B):
            marked.append(True)
        else:
            marked.append(any(oracle.common(A, B, C) for C in link_faces))

    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in range(len(pieces)):
        for q in range(p + 1, len(pieces)):
            rp, rq = find(p), find(q)
            if rp == rq:
                continue
            if oracle.common(*pieces[p], *pieces[q]):
                parent[rq] = rp

    comps: dict = {}
    for p in range(len(pieces)):
        comps.setdefault(find(p), []).append(p)
    good = [c for c in comps.values() if any(marked[p] for p in c)]
    bad = [c for c in comps.values() if not any(marked[p] for p in c)]
    witness = [pieces[p] for p in bad[0]] if bad else []
    return LocalPi0Report(
        vertex=v,
        pieces_total=len(pieces),
        components_total=len(comps),
        components_with_link_piece=len(good),
        passed=not bad,
        witness=witness,
        lp_calls=oracle.lp_calls,
    )


@dataclass
class BettiReport:
    dim: int
    rips_betti: list
    shadow_betti: list
    h1_torsion: list
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def betti_consequences(cloud: PointCloud, oracle: Optional[HullOracle] = None) -> BettiReport:
    """Compare beta_0 and beta_1 of the Rips complex and of its shadow.

    Always checked: equal beta_0.  In the plane: equal beta_1 and torsion-free
    H_1 of the Rips complex.  In R^3: beta_1 of the shadow at most beta_1 of
    the Rips complex.  In R^4 beta_1 is only reported.
    """
    n = cloud.dim
    if n not in (2, 3, 4):
        raise ValueError("betti_consequences supports ambient dimension 2, 3 or 4")
    K = flag_complex(adjacency(cloud), cap=2)
    prof = homology(K, 1)
    rb = prof.betti + [0] * (2 - len(prof.betti))
    tors = prof.torsion[1] if len(prof.torsion) > 1 else []
    sb = shadow_betti(cloud, 1, oracle)
    rep = BettiReport(n, rb, sb, tors)
    if rb[0] != sb[0]:
        rep.violations.append(f"beta_0 differs: rips {rb[0]} vs shadow {sb[0]}")
    if n == 2:
        if rb[1] != sb[1]:
            rep.violations.append(f"planar beta_1 differs: rips {rb[1]} vs shadow {sb[1]}")
        if tors:
            rep.violations.append(f"planar H_1 has torsion {tors}")
    elif n == 3:
        if sb[1] > rb[1]:
            rep.violations.append(f"beta_1(shadow)={sb[1]} exceeds beta_1(rips)={rb[1]}")
        rep.notes.append("beta_1 equal" if sb[1] == rb[1] else "beta_1 strictly smaller on the shadow")
    else:
        rep.notes.append("R^4: beta_1 reported without assertion")
    return rep


@dataclass(frozen=True)
class PlanarClassification:
    """``kind`` is ``"not_pm"``, ``"pm1"`` (a cycle) or ``"crosspolytope"``."""

    kind: str
    dim: Optional[int] = None


def classify_planar_pseudomanifold(cloud: PointCloud, subset=None) -> PlanarClassification:
    """Classify R(X), or its induced subcomplex on ``subset``, for planar X.

    Raises :class:`TheoremViolation` if a normal pseudomanifold of dimension
    at least two turns out not to be a crosspolytope boundary.
    """
    if cloud.dim != 2:
        raise ValueError("planar classifier needs points in R^2")
    K = flag_complex(adjacency(cloud))
    if subset is not None:
        K = induced(K, subset)
    rep = is_normal_pseudomanifold(K)
    if not rep.is_pm:
        return PlanarClassification("not_pm")
    if rep.dim == 1:
        return PlanarClassification("pm1", 1)
    d = is_isomorphic_to_crosspolytope(K)
    if d is None:
        dump = {
            "points": [[str(c) for c in p] for p in cloud.points],
            "ids": list(cloud.ids),
            "scale": str(cloud.scale),
            "strict": cloud.strict,
            "subset": None if subset is None else sorted(subset),
            "facets": [list(f) for f in K.facets],
        }
        raise TheoremViolation(
            f"planar Rips pseudomanifold of dimension {rep.dim} is not a crosspolytope: "
            + json.dumps(dump),
            dump,
        )
    return PlanarClassification("crosspolytope", d)


@dataclass
class SurfaceEdgeReport:
    vertices: int
    edges: int
    lower_bound: int
    links_are_4_cycles: bool
    is_flag: bool

    @property
    def equality(self) -> bool:
        return self.edges == self.lower_bound

    @property
    def two_v_edges(self) -> bool:
        return self.edges == 2 * self.vertices


def surface_edge_bound_check(K: SimplicialComplex) -> SurfaceEdgeReport:
    """Edge count against 3|V| - 6 and the 4-cycle link pattern of planar Rips surfaces."""
    if not is_closed_surface(K):
        raise ValueError("complex is not a closed surface")
    fv = f_vector(K)
    links4 = all(len(link(K, v).vertices) == 4 for v in K.vertices)
    return SurfaceEdgeReport(fv[0], fv[1], 3 * fv[0] - 6, links4, K.is_flag())


def rips_component_count(cloud: PointCloud) -> int:
    return component_count(flag_complex(adjacency(cloud), cap=1))
