"""Finite Rips models of linearly embedded complexes.

Pipeline: validate the embedding, bracket the critical scale eps0 (the least
diameter of a transversal of faces with empty common intersection), sample
|K| densely, and compare the homology of R(X; eps) with that of K.

Two samplers are provided.  ``sampling_plan`` follows the density bound
derived from the star radius and is exact but large.  The adaptive sampler
uses coarser grids and instead verifies directly, on the finite sample, the
three facts the nerve argument needs: every open star is sampled, every
sampled open star has a contractible Rips complex (by an explicit cone-link
collapse order), and every Rips face lies in one vertex star.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .geometry import GeometryError, Point, as_point, sq_dist
from .homology import HomologyProfile, flag_homology, homology
from .lp import lp_solve
from .simplicial import PointCloud, SimplicialComplex, adjacency, maximal_cliques
from .transversal import TransversalSolution, min_diameter_transversal, sqrt_upper

__all__ = [
    "EmbeddingError",
    "EmbeddedComplex",
    "EmbeddingReport",
    "validate_embedding",
    "EmptyFamily",
    "enumerate_minimal_empty_families",
    "family_transversal",
    "Epsilon0Bracket",
    "compute_epsilon0",
    "delta_lower_bound",
    "SampleSet",
    "SamplingPlan",
    "sampling_plan",
    "adaptive_sample",
    "CoverCheck",
    "verify_cover_condition",
    "cover_condition_by_cliques",
    "CollapseResult",
    "crush_collapse",
    "RealizeReport",
    "realize",
]


class EmbeddingError(GeometryError):
    """The coordinates do not realise the complex, or a parameter is out of range."""


@dataclass(frozen=True)
class EmbeddedComplex:
    complex: SimplicialComplex
    coords: dict

    def __post_init__(self):
        coords = {v: as_point(p) for v, p in self.coords.items()}
        missing = [v for v in self.complex.vertices if v not in coords]
        if missing:
            raise EmbeddingError(f"no coordinates for vertices {missing}")
        dims = {len(p) for p in coords.values()}
        if len(dims) > 1:
            raise EmbeddingError("coordinates of mixed dimension")
        object.__setattr__(self, "coords", coords)

    @property
    def ambient_dim(self) -> int:
        return len(next(iter(self.coords.values()))) if self.coords else 0

    def face_coords(self, face) -> list:
        return [self.coords[v] for v in face]

    def barycenter(self, face) -> Point:
        k = len(face)
        pts = self.face_coords(face)
        return tuple(sum((p[c] for p in pts), Fraction(0)) / k for c in range(self.ambient_dim))


# ---------------------------------------------------------------------------
# embedding validation


@dataclass
class EmbeddingReport:
    valid: bool
    violations: list = field(default_factory=list)  # (kind, faces, witness point or None)

    def __bool__(self) -> bool:
        return self.valid


def _affinely_independent(pts: Sequence[Point]) -> bool:
    if len(pts) <= 1:
        return True
    rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    rank = 0
    ncol = len(rows[0])
    for c in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(rows)


def _overlap_witness(ec: EmbeddedComplex, sigma, tau) -> Optional[Point]:
    """A point of |sigma| & |tau| outside |sigma & tau|, or None.

    Such a point exists iff some vertex of sigma outside tau gets positive
    weight; scaling the weights, that weight can be fixed to 1 and the
    convexity rows homogenised.
    """
    n = ec.ambient_dim
    A_pts, B_pts = ec.face_coords(sigma), ec.face_coords(tau)
    ns, nt = len(sigma), len(tau)
    base = []
    for c in range(n):
        base.append([p[c] for p in A_pts] + [-q[c] for q in B_pts])
    base.append([1] * ns + [-1] * nt)
    tset = set(tau)
    for i, v in enumerate(sigma):
        if v in tset:
            continue
        fix = [0] * (ns + nt)
        fix[i] = 1
        sol = lp_solve(base + [fix], [0] * (n + 1) + [1])
        if sol is not None:
            tot = sum(sol[:ns])
            return tuple(sum((sol[j] * A_pts[j][c] for j in range(ns)), Fraction(0)) / tot for c in range(n))
    return None


def validate_embedding(ec: EmbeddedComplex) -> EmbeddingReport:
    """Affine independence of every facet and |sigma| & |tau| = |sigma & tau| for facet pairs."""
    rep = EmbeddingReport(True)
    facets = ec.complex.facets
    for f in facets:
        if not _affinely_independent(ec.face_coords(f)):
            rep.violations.append(("degenerate", (f,), None))
    for s, t in combinations(facets, 2):
        w = _overlap_witness(ec, s, t) or _overlap_witness(ec, t, s)
        if w is not None:
            rep.violations.append(("overlap", (s, t), w))
    rep.valid = not rep.violations
    return rep


def _require_valid(ec: EmbeddedComplex) -> None:
    rep = validate_embedding(ec)
    if not rep.valid:
        kind, faces, w = rep.violations[0]
        raise EmbeddingError(f"invalid embedding: {kind} at {faces}" + (f", witness {w}" if w else ""))


# ---------------------------------------------------------------------------
# empty families and eps0


@dataclass(frozen=True)
class EmptyFamily:
    faces: tuple
    minimal: bool = True

    @property
    def size(self) -> int:
        return len(self.faces)


def enumerate_minimal_empty_families(K: SimplicialComplex, n: int) -> list:
    """Inclusion-minimal families of 2..n+1 distinct faces with empty intersection.

    Grown level by level from families whose intersection is still nonempty;
    a candidate is kept only when every one of its maximal subfamilies is
    such a family.
    """
    faces = [f for f in K.all_faces()]
    faces.sort(key=lambda f: (len(f), f))
    sets = [frozenset(f) for f in faces]
    out = []
    # level 1: single faces, all nonempty
    alive = {(i,): sets[i] for i in range(len(faces))}
    for t in range(2, n + 2):
        nxt = {}
        for fam, inter in alive.items():
            for j in range(fam[-1] + 1, len(faces)):
                cand = fam + (j,)
                new = inter & sets[j]
                subs_ok = all(cand[:i] + cand[i + 1 :] in alive for i in range(len(cand) - 1))
                if not subs_ok:
                    continue
                if new:
                    nxt[cand] = new
                else:
                    out.append(EmptyFamily(tuple(faces[i] for i in cand)))
        alive = nxt
        if not alive:
            break
    return out


def family_transversal(family: EmptyFamily, ec: EmbeddedComplex, iters: int = 3000) -> TransversalSolution:
    return min_diameter_transversal([ec.face_coords(f) for f in family.faces], iters=iters)


def _dominates(G: EmptyFamily, F: EmptyFamily) -> bool:
    # every face of G contains some face of F, so value(G) <= value(F)
    return all(any(set(f) <= set(g) for f in F.faces) for g in G.faces)


def _round_down(x: Fraction, den: int) -> Fraction:
    return Fraction(math.floor(x * den), den)


@dataclass
class Epsilon0Bracket:
    """``lower`` is an exact rational; ``upper`` a float (exact square in ``upper_sq``).

    ``None`` bounds mean K has no empty family, i.e. every scale works.
    """

    lower: Optional[Fraction]
    upper: Optional[float]
    upper_sq: Optional[Fraction]
    argmin: Optional[EmptyFamily]
    families: int
    solved: list = field(default_factory=list)  # (family, solution) for non-dominated families

    @property
    def width(self) -> float:
        if self.lower is None:
            return 0.0
        return self.upper - float(self.lower)


def compute_epsilon0(ec: EmbeddedComplex, iters: int = 3000, check: bool = True) -> Epsilon0Bracket:
    """Bracket eps0 over the non-dominated minimal empty families."""
    if check:
        _require_valid(ec)
    fams = enumerate_minimal_empty_families(ec.complex, ec.ambient_dim)
    if not fams:
        return Epsilon0Bracket(None, None, None, None, 0)
    keep = []
    for F in fams:
        if any(_dominates(G, F) and not _dominates(F, G) for G in fams if G is not F):
            continue
        keep.append(F)
    solved = [(F, family_transversal(F, ec, iters)) for F in keep]
    lower = _round_down(min(s.certified_gap for _, s in solved), 10**12)
    F_best, s_best = min(solved, key=lambda fs: (fs[1].value_sq, fs[0].faces))
    return Epsilon0Bracket(lower, s_best.value, s_best.value_sq, F_best, len(fams), solved)


# ---------------------------------------------------------------------------
# samples


def delta_lower_bound(eps, R) -> Fraction:
    """Rational lower bound on eps - eps * sqrt(1 - eps^2 / (4 R^2)), for R >= eps / 2."""
    eps, R = Fraction(eps), Fraction(R)
    if eps <= 0 or R <= 0:
        raise EmbeddingError("eps and R must be positive")
    if 2 * R < eps:
        raise EmbeddingError("R must be at least eps / 2")
    return eps - eps * sqrt_upper(1 - eps * eps / (4 * R * R))


@dataclass
class SampleSet:
    """Points on |K| with the face whose relative interior holds each one."""

    points: list
    carriers: list

    def __len__(self) -> int:
        return len(self.points)

    def cloud(self, eps, strict: bool = True) -> PointCloud:
        return PointCloud(tuple(self.points), Fraction(eps), strict)

    def in_open_star(self, sigma) -> list:
        s = set(sigma)
        return [i for i, c in enumerate(self.carriers) if s <= set(c)]


def _next_pow2(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


def _compositions(N: int, parts: int):
    # positive compositions of N into `parts` parts, in lexicographic order
    for cuts in combinations(range(1, N), parts - 1):
        prev, out = 0, []
        for c in cuts + (N,):
            out.append(c - prev)
            prev = c
        yield out


def _grid(ec: EmbeddedComplex, resolution: dict, max_points: Optional[int]) -> SampleSet:
    total = sum(math.comb(N - 1, len(f) - 1) if len(f) > 1 else 1 for f, N in resolution.items())
    if max_points is not None and total > max_points:
        raise EmbeddingError(f"sample would have {total} points, budget is {max_points}")
    pts, carriers = [], []
    n = ec.ambient_dim
    for f in sorted(resolution, key=lambda f: (len(f), f)):
        V = ec.face_coords(f)
        if len(f) == 1:
            pts.append(V[0])
            carriers.append(f)
            continue
        N = resolution[f]
        for m in _compositions(N, len(f)):
            pts.append(tuple(sum((Fraction(mi, N) * v[c] for mi, v in zip(m, V)), Fraction(0)) for c in range(n)))
            carriers.append(f)
    return SampleSet(pts, carriers)


def _face_diam_upper(ec: EmbeddedComplex, f) -> Fraction:
    if len(f) < 2:
        return Fraction(0)
    return sqrt_upper(max(sq_dist(ec.coords[a], ec.coords[b]) for a, b in combinations(f, 2)))


@dataclass
class SamplingPlan:
    eps: Fraction
    radius: dict  # face -> rational upper bound on the closed-star radius
    delta_by_face: dict
    delta: Fraction
    resolution: dict  # face -> grid denominator N
    samples: SampleSet

    def delta_table(self) -> list:
        return [
            {"face": list(f), "radius": str(self.radius[f]), "delta": str(self.delta_by_face[f])}
            for f in sorted(self.delta_by_face, key=lambda f: (len(f), f))
        ]


def sampling_plan(
    ec: EmbeddedComplex, eps, eps0_lower: Optional[Fraction] = None, max_points: Optional[int] = 20000
) -> SamplingPlan:
    """Grid sample with every open star delta-dense for the star's own delta.

    A face tau of dimension k gets the interior barycentric grid with
    denominator N (a power of two) where (3k+1) diam(tau) / (2N) <= delta / 2.
    """
    eps = Fraction(eps)
    if eps0_lower is None:
        eps0_lower = compute_epsilon0(ec).lower
    if eps <= 0 or (eps0_lower is not None and eps >= eps0_lower):
        raise EmbeddingError(f"eps={eps} outside (0, {eps0_lower})")
    K = ec.complex
    radius, dlt = {}, {}
    for sigma in K.all_faces():
        c = ec.barycenter(sigma)
        star_verts = {v for f in K.facets if set(sigma) <= set(f) for v in f}
        R = sqrt_upper(max(sq_dist(c, ec.coords[v]) for v in star_verts))
        R = max(R, eps)  # any radius bounding the star works; eps keeps the radical real
        radius[sigma] = R
        dlt[sigma] = delta_lower_bound(eps, R)
    delta = min(dlt.values())
    res = {}
    for tau in K.all_faces():
        k = len(tau) - 1
        if k == 0:
            res[tau] = 1
            continue
        D = _face_diam_upper(ec, tau)
        res[tau] = _next_pow2(max(k + 1, math.ceil((3 * k + 1) * D / delta)))
    return SamplingPlan(eps, radius, dlt, delta, res, _grid(ec, res, max_points))


def adaptive_sample(ec: EmbeddedComplex, spacing, max_points: Optional[int] = None) -> SampleSet:
    """Interior grids with about ``spacing`` between neighbouring points along edges."""
    spacing = Fraction(spacing)
    res = {}
    for tau in ec.complex.all_faces():
        k = len(tau) - 1
        if k == 0:
            res[tau] = 1
        else:
            res[tau] = _next_pow2(max(k + 1, math.ceil(_face_diam_upper(ec, tau) / spacing)))
    return _grid(ec, res, max_points)


# ---------------------------------------------------------------------------
# finite certificates


@dataclass
class CoverCheck:
    ok: bool
    witness: Optional[tuple] = None  # a Rips face whose carriers share no vertex

    def __bool__(self) -> bool:
        return self.ok


def _rainbow_clique(classes: list, adj: dict) -> Optional[tuple]:
    # one point per class, pairwise adjacent; smallest classes first
    classes = sorted(classes, key=len)

    def rec(i, pool_common, chosen):
        if i == len(classes):
            return tuple(sorted(chosen))
        pool = classes[i] if pool_common is None else classes[i] & pool_common
        for x in sorted(pool):
            nxt = adj[x] if pool_common is None else pool_common & adj[x]
            hit = rec(i + 1, nxt, chosen + [x])
            if hit:
                return hit
        return None

    return rec(0, None, [])


def verify_cover_condition(samples: SampleSet, ec: EmbeddedComplex, eps, adj: Optional[dict] = None) -> CoverCheck:
    """Every face of R(X; eps) lies inside the open star of one vertex of K.

    x is in the open star of v exactly when v is a vertex of x's carrier, so
    a face is uncovered iff its carriers share no vertex, iff it contains
    one point from each face of a minimal empty family of carriers.  Such
    families have at most dim K + 2 members, so the search is a shallow
    backtrack over sample points grouped by carrier.
    """
    if adj is None:
        adj = adjacency(samples.cloud(eps))
    by_carrier: dict = {}
    for i, c in enumerate(samples.carriers):
        by_carrier.setdefault(tuple(c), set()).add(i)
    for fam in enumerate_minimal_empty_families(ec.complex, ec.complex.dim + 1):
        if any(f not in by_carrier for f in fam.faces):
            continue
        hit = _rainbow_clique([by_carrier[f] for f in fam.faces], adj)
        if hit:
            return CoverCheck(False, hit)
    return CoverCheck(True)


def cover_condition_by_cliques(samples: SampleSet, eps, adj: Optional[dict] = None) -> CoverCheck:
    """Same question answered by listing every maximal face; slow, kept as a cross-check."""
    if adj is None:
        adj = adjacency(samples.cloud(eps))
    for clique in maximal_cliques(adj):
        common = set(samples.carriers[clique[0]])
        for i in clique[1:]:
            common &= set(samples.carriers[i])
            if not common:
                return CoverCheck(False, clique)
    return CoverCheck(True)


@dataclass
class CollapseResult:
    ok: bool
    order: list
    apices: list  # apex for steps 2.. (None for the first point)
    failed_at: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def crush_collapse(points: Sequence[Point], center: Point, eps, strict: bool = True,
                   adj: Optional[dict] = None) -> CollapseResult:
    """Add points by distance from ``center``; each link must be a cone.

    When every new point's link in the Rips complex of the earlier points is
    a cone over an earlier vertex, the final Rips complex is contractible.
    ``failed_at`` is the 1-based step that found no apex.
    """
    points = [as_point(p) for p in points]
    center = as_point(center)
    if adj is None:
        adj = adjacency(PointCloud(tuple(points), Fraction(eps), strict))
    order = sorted(range(len(points)), key=lambda i: (sq_dist(points[i], center), i))
    rank = {i: r for r, i in enumerate(order)}
    seen: set = set()
    apices: list = []
    for step, i in enumerate(order):
        L = adj[i] & seen
        if step == 0:
            apices.append(None)
        else:
            apex = None
            # every earlier neighbour is a candidate; those nearest the center first
            for u in sorted(L, key=rank.__getitem__):
                if L <= adj[u] | {u}:
                    apex = u
                    break
            if apex is None:
                return CollapseResult(False, order[: step + 1], apices, step + 1)
            apices.append(apex)
        seen.add(i)
    return CollapseResult(True, order, apices)


# ---------------------------------------------------------------------------
# the pipeline


@dataclass
class RealizeReport:
    eps: Fraction
    eps0_lower: Optional[Fraction]
    eps0_upper: Optional[float]
    sampler: str
    n_points: int
    delta: Optional[Fraction]
    delta_table: list
    profile_K: HomologyProfile
    profile_RX: HomologyProfile
    stars_nonempty: bool
    stars_contractible: Optional[bool]
    cover_ok: bool
    samples: SampleSet = field(repr=False, default=None)
    rounds: int = 1
    note: str = "verification compares homology profiles; homotopy equivalence itself is not certified"

    @property
    def match(self) -> bool:
        return self.profile_K.betti == self.profile_RX.betti and self.profile_K.torsion == self.profile_RX.torsion

    def to_json(self) -> dict:
        return {
            "eps": str(self.eps),
            "eps0": {
                "lower": None if self.eps0_lower is None else str(self.eps0_lower),
                "upper": self.eps0_upper,
            },
            "sampler": self.sampler,
            "points": self.n_points,
            "rounds": self.rounds,
            "delta": None if self.delta is None else str(self.delta),
            "delta_table": self.delta_table,
            "profile_K": self.profile_K.to_json(),
            "profile_RX": self.profile_RX.to_json(),
            "stars_nonempty": self.stars_nonempty,
            "stars_contractible": self.stars_contractible,
            "cover_ok": self.cover_ok,
            "match": self.match,
            "note": self.note,
        }


def _star_checks(samples: SampleSet, ec: EmbeddedComplex, eps, adj: dict) -> tuple:
    nonempty, contractible = True, True
    for sigma in ec.complex.all_faces():
        idx = samples.in_open_star(sigma)
        if not idx:
            nonempty = False
            contractible = False
            break
        sub = {a: adj[i] for a, i in enumerate(idx)}
        pos = {i: a for a, i in enumerate(idx)}
        local = {a: {pos[j] for j in ns if j in pos} for a, ns in sub.items()}
        res = crush_collapse([samples.points[i] for i in idx], ec.barycenter(sigma), eps, adj=local)
        if not res.ok:
            contractible = False
            break
    return nonempty, contractible


def realize(
    ec: EmbeddedComplex,
    eps=None,
    sampler: str = "auto",
    plan_budget: int = 2500,
    max_points: int = 20000,
    max_rounds: int = 6,
) -> RealizeReport:
    """Sample |K|, build R(X; eps) and compare homology with K.

    ``sampler`` is ``"plan"`` (density bound), ``"adaptive"`` (halve the
    spacing from eps/2 until the finite star and cover checks pass) or
    ``"auto"`` (plan when it has at most ``plan_budget`` points, adaptive
    otherwise).  ``max_points`` caps either sampler.
    """
    if sampler not in ("auto", "plan", "adaptive"):
        raise ValueError(f"unknown sampler {sampler!r}")
    br = compute_epsilon0(ec)
    if eps is None:
        if br.lower is None:
            diam = max((sq_dist(p, q) for p, q in combinations(ec.coords.values(), 2)), default=Fraction(0))
            eps = sqrt_upper(diam) + 1
        else:
            eps = _round_down(br.lower / 2, 10**6) or br.lower / 2
    eps = Fraction(eps)
    if eps <= 0 or (br.lower is not None and eps >= br.lower):
        raise EmbeddingError(f"eps={eps} outside (0, {br.lower})")
    K = ec.complex
    top = K.dim
    prof_K = homology(K, top)

    plan = None
    if sampler in ("auto", "plan"):
        try:
            budget = max_points if sampler == "plan" else min(plan_budget, max_points)
            plan = sampling_plan(ec, eps, br.lower, max_points=budget)
        except EmbeddingError:
            if sampler == "plan":
                raise
    if plan is not None:
        samples = plan.samples
        adj = adjacency(samples.cloud(eps))
        nonempty, contractible = _star_checks(samples, ec, eps, adj)
        cover = verify_cover_condition(samples, ec, eps, adj)
        prof = flag_homology(adj, top)
        return RealizeReport(eps, br.lower, br.upper, "plan", len(samples), plan.delta, plan.delta_table(),
                             prof_K, prof, nonempty, contractible, cover.ok, samples)

    spacing = eps / 2
    rounds = 0
    while True:
        rounds += 1
        samples = adaptive_sample(ec, spacing, max_points)
        adj = adjacency(samples.cloud(eps))
        nonempty, contractible = _star_checks(samples, ec, eps, adj)
        cover = verify_cover_condition(samples, ec, eps, adj) if contractible else CoverCheck(False)
        if (nonempty and contractible and cover.ok) or rounds >= max_rounds:
            break
        try:
            adaptive_sample(ec, spacing / 2, max_points)
        except EmbeddingError:
            break
        spacing /= 2
    if not contractible:
        cover = verify_cover_condition(samples, ec, eps, adj)
    prof = flag_homology(adj, top)
    return RealizeReport(eps, br.lower, br.upper, "adaptive", len(samples), None, [], prof_K, prof,
                         nonempty, contractible, cover.ok, samples, rounds)
