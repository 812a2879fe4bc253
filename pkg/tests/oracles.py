"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction as F

import numpy as np
import sympy


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    M = [[F(x) for x in r] for r in rows]
    piv = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M, piv


def lp_feasible_by_bases(A, b) -> bool:
    """Nonnegative solution of A x = b exists iff some independent column set gives one."""
    m = len(A)
    n = len(A[0]) if m else 0
    if all(x == 0 for x in b):
        return True
    for k in range(1, min(m, n) + 1):
        for S in itertools.combinations(range(n), k):
            aug = [[A[i][j] for j in S] + [b[i]] for i in range(m)]
            M, piv = rref(aug)
            if k in piv:  # inconsistent
                continue
            if len(piv) < k:  # dependent columns; covered by a smaller set
                continue
            x = [M[i][k] for i in range(k)]
            if all(v >= 0 for v in x):
                return True
    return False


def rank_q(M) -> int:
    if not M or not M[0]:
        return 0
    return sympy.Matrix(M).rank()


def rank_mod_p(M, p: int = 2) -> int:
    A = [[x % p for x in r] for r in M]
    rank = 0
    if not A:
        return 0
    ncols = len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [(x * inv) % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def field_betti(K, up_to: int, rank):
    """Betti numbers over a field, from boundary ranks computed by ``rank``."""
    from ripslab.homology import boundary_matrices

    mats = {bm.degree: bm.to_dense() for bm in boundary_matrices(K, up_to + 1)}
    ranks = {k: (rank(M) if M and M[0] else 0) for k, M in mats.items()}
    return [len(K.faces(k)) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(up_to + 1)]


def random_complex(rng: random.Random, n_vertices: int, n_facets: int, max_size: int):
    from ripslab.simplicial import SimplicialComplex

    facets = []
    for _ in range(n_facets):
        k = rng.randint(1, max_size)
        facets.append(tuple(sorted(rng.sample(range(n_vertices), k))))
    return SimplicialComplex(facets)


def _simplex_grid(k: int, steps: int) -> np.ndarray:
    rows = []
    for comp in itertools.product(range(steps + 1), repeat=k - 1):
        if sum(comp) <= steps:
            rows.append(list(comp) + [steps - sum(comp)])
    return np.array(rows, dtype=float) / steps


def _box_grid(lam: np.ndarray, w: float, m: int) -> np.ndarray:
    # barycentric points within w (sup norm on the first k-1 coordinates) of lam
    k = len(lam)
    if k == 1:
        return np.array([[1.0]])
    axes = [np.linspace(lam[i] - w, lam[i] + w, m) for i in range(k - 1)]
    mesh = np.array(list(itertools.product(*axes)))
    last = 1.0 - mesh.sum(axis=1)
    pts = np.column_stack([mesh, last])
    ok = (pts >= -1e-15).all(axis=1)
    return np.clip(pts[ok], 0.0, 1.0)


def _best_over(blocks_pts):
    """Minimise the max pairwise distance over a product of finite point sets (t <= 3)."""
    t = len(blocks_pts)
    if t == 2:
        D = np.linalg.norm(blocks_pts[0][:, None, :] - blocks_pts[1][None, :, :], axis=2)
        i, j = np.unravel_index(np.argmin(D), D.shape)
        return float(D[i, j]), (i, j)
    if t == 3:
        D01 = np.linalg.norm(blocks_pts[0][:, None, :] - blocks_pts[1][None, :, :], axis=2)
        D02 = np.linalg.norm(blocks_pts[0][:, None, :] - blocks_pts[2][None, :, :], axis=2)
        D12 = np.linalg.norm(blocks_pts[1][:, None, :] - blocks_pts[2][None, :, :], axis=2)
        best, arg = math.inf, None
        for i in range(len(blocks_pts[0])):
            m = np.maximum(np.maximum(D01[i][:, None], D02[i][None, :]), D12)
            j, k = np.unravel_index(np.argmin(m), m.shape)
            if m[j, k] < best:
                best, arg = float(m[j, k]), (i, j, k)
        return best, arg
    raise ValueError("grid oracle handles t <= 3")


def grid_min_diameter(verts, steps: int = 24, rounds: int = 8, m: int = 17):
    """Barycentric grid search for the minimum-diameter transversal.

    A full grid of resolution ``steps`` on every simplex, then ``rounds`` of
    local boxes around the incumbent, each a quarter of the previous width.
    Returns (value, coarse lower bound); the lower bound subtracts the
    covering radius of the coarse grid on each block (the objective is
    1-Lipschitz in each point).
    """
    fverts = [np.array([[float(c) for c in v] for v in V]) for V in verts]
    lam_sets = [_simplex_grid(len(V), steps) for V in fverts]
    val, arg = _best_over([L @ V for L, V in zip(lam_sets, fverts)])
    cover = 0.0
    for V in fverts:
        diam = max((float(np.linalg.norm(a - b)) for a, b in itertools.combinations(V, 2)), default=0.0)
        cover += diam * len(V) / (2 * steps)
    lower = val - 2 * cover
    best = val
    lams = [L[i] for L, i in zip(lam_sets, arg)]
    w = 2.0 / steps
    for _ in range(rounds):
        lam_sets = [_box_grid(l, w, m) for l in lams]
        val, arg = _best_over([L @ V for L, V in zip(lam_sets, fverts)])
        if val <= best:
            best = val
            lams = [L[i] for L, i in zip(lam_sets, arg)]
        w /= 4
    return best, lower


def planar_hull_contains(x, gens) -> bool:
    """Point in the hull of planar generators, by orientation tests on all triangles."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_seg(p, a, b):
        return orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])

    gens = list(gens)
    if any(tuple(g) == tuple(x) for g in gens):
        return True
    for a, b in itertools.combinations(gens, 2):
        if on_seg(x, a, b):
            return True
    for a, b, c in itertools.combinations(gens, 3):
        s = [orient(a, b, x), orient(b, c, x), orient(c, a, x)]
        if orient(a, b, c) != 0 and (all(v >= 0 for v in s) or all(v <= 0 for v in s)):
            return True
    return False


def raster_components(cloud, lo, hi, n):
    """Components of the grid points inside the shadow, 4-neighbour connectivity."""
    from ripslab.simplicial import rips_complex

    faces = [[cloud.point(v) for v in f] for f in rips_complex(cloud).facets]
    step = (F(hi) - F(lo)) / n
    inside = set()
    for i in range(n + 1):
        for j in range(n + 1):
            x = (F(lo) + i * step, F(lo) + j * step)
            if any(planar_hull_contains(x, f) for f in faces):
                inside.add((i, j))
    seen, comps = set(), 0
    for cell in inside:
        if cell in seen:
            continue
        comps += 1
        stack = [cell]
        seen.add(cell)
        while stack:
            i, j = stack.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in inside and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return comps, inside


def flag_surfaces(n: int):
    """All labelled graphs on n vertices whose flag complex is a closed surface."""
    from ripslab.simplicial import flag_complex, is_closed_surface

    pairs = list(itertools.combinations(range(n), 2))
    found = []
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        deg = [0] * n
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        # a vertex link in a flag surface is a cycle of length >= 4
        if min(deg) < 4:
            continue
        adj = {v: set() for v in range(n)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        K = flag_complex(adj)
        if is_closed_surface(K):
            found.append(K)
    return found


def polygon_sample(polygon, spacing):
    """Lattice points inside a simple polygon plus points along its edges, ``spacing`` apart."""
    from ripslab.geometry import point_in_polygon

    xs = [p[0] for p in polygon]
    ys = [p[1] for p in polygon]
    pts = set()
    i0, i1 = math.floor(min(xs) / spacing), math.ceil(max(xs) / spacing)
    j0, j1 = math.floor(min(ys) / spacing), math.ceil(max(ys) / spacing)
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            x = (i * spacing, j * spacing)
            if point_in_polygon(x, polygon) >= 0:
                pts.add(x)
    for a, b in zip(polygon, polygon[1:] + polygon[:1]):
        L = math.sqrt(float((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2))
        m = max(1, math.ceil(L / float(spacing)))
        for k in range(m):
            t = F(k, m)
            pts.add((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return sorted(pts)


def max_gap(polygon, samples, probes: int = 400, seed: int = 0) -> float:
    """Largest distance from a random point of the polygon to the nearest sample."""
    from ripslab.geometry import point_in_polygon

    rng = random.Random(seed)
    xs = [float(p[0]) for p in polygon]
    ys = [float(p[1]) for p in polygon]
    S = np.array([[float(c) for c in p] for p in samples])
    worst, hit = 0.0, 0
    while hit < probes:
        x = (F(rng.uniform(min(xs), max(xs))).limit_denominator(10**6), F(rng.uniform(min(ys), max(ys))).limit_denominator(10**6))
        if point_in_polygon(x, polygon) < 0:
            continue
        hit += 1
        d = np.min(np.linalg.norm(S - np.array([float(x[0]), float(x[1])]), axis=1))
        worst = max(worst, float(d))
    return worst


def apex_configuration(rng: random.Random, dim: int = 3, den: int = 64):
    """Five rational points (A, B, C, P, Q) with {A,B,C} and {P,Q} of diameter
    below 1 and conv{P,Q} meeting conv{A,B,C}.  In the plane C equals B.

    The meeting point is planted: a random convex combination of the
    triangle (sometimes a vertex or an edge point), with P and Q on opposite
    sides of it along a random direction.
    """
    from ripslab.geometry import diameter_lt, segment_triangle_intersect, segments_intersect

    def jitter(c, w):
        return tuple(x + F(rng.randint(-w, w), den) for x in c)

    while True:
        center = tuple(F(rng.randint(0, 2 * den), den) for _ in range(dim))
        A, B = jitter(center, den * 3 // 10), jitter(center, den * 3 // 10)
        C = jitter(center, den * 3 // 10) if dim == 3 else B
        kind = rng.random()
        if kind < 0.1:
            w = [1, 0, 0]
        elif kind < 0.2:
            w = [rng.randint(1, 9), rng.randint(1, 9), 0]
        else:
            w = [rng.randint(1, 9) for _ in range(3)]
        rng.shuffle(w)
        s = sum(w)
        X = tuple(sum(F(wi, s) * p[k] for wi, p in zip(w, (A, B, C))) for k in range(dim))
        u = tuple(F(rng.randint(-den // 2, den // 2), den) for _ in range(dim))
        a, b = F(rng.randint(0, 8), 8), F(rng.randint(0, 8), 8)
        P = tuple(x + a * d for x, d in zip(X, u))
        Q = tuple(x - b * d for x, d in zip(X, u))
        if not (diameter_lt([A, B, C], 1) and diameter_lt([P, Q], 1)):
            continue
        meets = segment_triangle_intersect(P, Q, A, B, C) if dim == 3 else segments_intersect(A, B, P, Q)
        if meets:
            return A, B, C, P, Q
