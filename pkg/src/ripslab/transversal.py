"""Minimum-diameter transversals of a family of simplices.

Minimises ``max_{i<j} |x_i - x_j|`` over ``x_i`` in the simplex ``|sigma_i|``.
The objective is convex, so a projected subgradient method in barycentric
coordinates converges to the global optimum; a short SLSQP polish on the
epigraph form tightens the last digits.  The returned lower bound is an
exact rational obtained from a Lagrangian dual certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog, minimize

__all__ = [
    "TransversalSolution",
    "project_simplex",
    "min_diameter_transversal",
    "sqrt_upper",
    "sqrt_lower",
    "dual_lower_bound",
]


def sqrt_upper(q, prec: int = 10**9) -> Fraction:
    """Rational upper bound on sqrt(q), within 1/prec."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    num = q.numerator * q.denominator * prec * prec
    s = math.isqrt(num)
    if s * s < num:
        s += 1
    return Fraction(s, q.denominator * prec)


def sqrt_lower(q, prec: int = 10**9) -> Fraction:
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    return Fraction(math.isqrt(q.numerator * q.denominator * prec * prec), q.denominator * prec)


def project_simplex(c: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    n = len(c)
    a = -np.sort(-c)
    cs = (np.cumsum(a) - 1) / np.arange(1, n + 1)
    k = np.nonzero(a > cs)[0][-1]
    return np.maximum(c - cs[k], 0.0)


@dataclass
class TransversalSolution:
    """Best transversal found.

    ``bary`` holds exact barycentric coordinates (nonnegative, summing to 1)
    per simplex; ``value`` is the float diameter of the exact points and
    ``value_sq`` its exact square; ``certified_gap`` is a rational lower
    bound on the true optimum.
    """

    bary: list
    points: list
    value: float
    value_sq: Fraction
    certified_gap: Fraction
    iterations: int
    converged: bool

    @property
    def gap(self) -> float:
        return self.value - float(self.certified_gap)


def _diam(blocks, lams):
    xs = [V.T @ l for V, l in zip(blocks, lams)]
    best, arg = -1.0, None
    for i, j in combinations(range(len(xs)), 2):
        d = float(np.linalg.norm(xs[i] - xs[j]))
        if d > best:
            best, arg = d, (i, j)
    return best, arg, xs


def _subgradient(blocks, lam0, iters, step0):
    lams = [l.copy() for l in lam0]
    best_val, _, _ = _diam(blocks, lams)
    best = [l.copy() for l in lams]
    for k in range(iters):
        val, (i, j), xs = _diam(blocks, lams)
        if val < best_val:
            best_val, best = val, [l.copy() for l in lams]
        diff = xs[i] - xs[j]
        nrm = np.linalg.norm(diff)
        if nrm == 0:
            break
        u = diff / nrm
        gi, gj = blocks[i] @ u, -(blocks[j] @ u)
        gn = math.sqrt(float(gi @ gi + gj @ gj)) or 1.0
        a = step0 / math.sqrt(k + 1) / gn
        lams[i] = project_simplex(lams[i] - a * gi)
        lams[j] = project_simplex(lams[j] - a * gj)
    val, _, _ = _diam(blocks, lams)
    if val < best_val:
        best_val, best = val, lams
    return best_val, best


def _polish(blocks, lams):
    sizes = [len(l) for l in lams]
    cuts = np.cumsum([0] + sizes)
    t = len(blocks)

    def split(z):
        return [z[cuts[i] : cuts[i + 1]] for i in range(t)]

    def cons_pairs(z):
        xs = [V.T @ l for V, l in zip(blocks, split(z[:-1]))]
        s = z[-1]
        return np.array([s * s - float((xs[i] - xs[j]) @ (xs[i] - xs[j])) for i, j in combinations(range(t), 2)])

    cons = [{"type": "ineq", "fun": cons_pairs}]
    for i in range(t):
        cons.append({"type": "eq", "fun": (lambda z, i=i: np.sum(z[cuts[i] : cuts[i + 1]]) - 1.0)})
    val, _, _ = _diam(blocks, lams)
    z0 = np.concatenate(lams + [np.array([val])])
    bounds = [(0.0, 1.0)] * (len(z0) - 1) + [(0.0, None)]
    res = minimize(lambda z: z[-1], z0, method="SLSQP", constraints=cons, bounds=bounds,
                   options={"maxiter": 200, "ftol": 1e-14})
    cand = [project_simplex(l) for l in split(res.x[:-1])]
    cval, _, _ = _diam(blocks, cand)
    return (cval, cand) if cval < val else (val, lams)


def _rationalise(lam: np.ndarray, den: int) -> tuple:
    q = [Fraction(max(float(x), 0.0)).limit_denominator(den) for x in lam]
    s = sum(q)
    if s == 0:
        q = [Fraction(1)] + [Fraction(0)] * (len(lam) - 1)
        s = Fraction(1)
    return tuple(x / s for x in q)


def _exact_diam_sq(verts, bary) -> tuple:
    pts = []
    for V, b in zip(verts, bary):
        n = len(V[0])
        pts.append(tuple(sum((w * v[c] for w, v in zip(b, V)), Fraction(0)) for c in range(n)))
    best = Fraction(0)
    for p, q in combinations(pts, 2):
        d = sum(((a - c) ** 2 for a, c in zip(p, q)), Fraction(0))
        best = max(best, d)
    return best, pts


def dual_lower_bound(verts: Sequence[Sequence], points: Sequence) -> Fraction:
    """Exact lower bound from pair weights and unit directions.

    For weights ``w >= 0`` summing to one and vectors ``|u_ij| <= 1``,
    ``max |x_i - x_j| >= sum_i min_v g_i . v`` with
    ``g_i = sum_j w_ij u_ij - sum_j w_ji u_ji``.  Directions come from the
    given points, weights from a small LP.
    """
    t = len(verts)
    xs = [np.array([float(c) for c in p]) for p in points]
    pairs = list(combinations(range(t), 2))
    dirs = []
    for i, j in pairs:
        d = xs[i] - xs[j]
        nrm = np.linalg.norm(d)
        dirs.append(d / nrm if nrm > 1e-12 else np.zeros_like(d))
    P = len(pairs)
    # variables: w (P), s (t); maximise sum s
    c = np.concatenate([np.zeros(P), -np.ones(t)])
    A_ub, b_ub = [], []
    fverts = [np.array([[float(c_) for c_ in v] for v in V]) for V in verts]
    for i in range(t):
        for v in fverts[i]:
            row = np.zeros(P + t)
            for p, (a, b) in enumerate(pairs):
                if a == i:
                    row[p] = -(dirs[p] @ v)
                elif b == i:
                    row[p] = dirs[p] @ v
            row[P + i] = 1.0
            A_ub.append(row)
            b_ub.append(0.0)
    A_eq = [np.concatenate([np.ones(P), np.zeros(t)])]
    bounds = [(0, None)] * P + [(None, None)] * t
    res = linprog(c, A_ub=np.array(A_ub), b_ub=b_ub, A_eq=np.array(A_eq), b_eq=[1.0],
                  bounds=bounds, method="highs")
    if not res.success:
        return Fraction(0)
    w = [Fraction(max(float(x), 0.0)).limit_denominator(10**9) for x in res.x[:P]]
    sw = sum(w)
    if sw == 0:
        return Fraction(0)
    w = [x / sw for x in w]
    udirs = []
    for d in dirs:
        u = [Fraction(float(x)).limit_denominator(10**9) for x in d]
        n2 = sum(x * x for x in u)
        if n2 > 1:
            nrm = sqrt_upper(n2)
            u = [x / nrm for x in u]
        udirs.append(u)
    total = Fraction(0)
    for i in range(t):
        g = [Fraction(0)] * len(udirs[0])
        for p, (a, b) in enumerate(pairs):
            if w[p] == 0:
                continue
            sign = 1 if a == i else (-1 if b == i else 0)
            if sign:
                g = [gc + sign * w[p] * uc for gc, uc in zip(g, udirs[p])]
        total += min(sum((gc * vc for gc, vc in zip(g, v)), Fraction(0)) for v in verts[i])
    return max(total, Fraction(0))


def min_diameter_transversal(
    verts: Sequence[Sequence], iters: int = 3000, tol: float = 1e-6, polish: bool = True
) -> TransversalSolution:
    """Minimise the diameter of one point per simplex.

    ``verts[i]`` lists the vertex coordinates (rationals) of the i-th simplex.
    Starts: barycenters and the best vertex choice.  Reports ``converged``
    when the certified gap is within ``tol``; otherwise the result is still
    valid, just not tight.
    """
    t = len(verts)
    if t < 2:
        raise ValueError("need at least two simplices")
    blocks = [np.array([[float(c) for c in v] for v in V]) for V in verts]
    span = max(float(np.ptp(np.vstack(blocks), axis=0).max()), 1e-9)
    starts = [[np.full(len(V), 1.0 / len(V)) for V in blocks]]
    choices = list(product(*[range(len(V)) for V in blocks]))
    if len(choices) <= 4096:
        def vval(ch):
            xs = [blocks[i][c] for i, c in enumerate(ch)]
            return max(np.linalg.norm(a - b) for a, b in combinations(xs, 2))
        ch = min(choices, key=vval)
        starts.append([np.eye(len(V))[c] for V, c in zip(blocks, ch)])
    best_val, best = math.inf, None
    for lam0 in starts:
        val, lams = _subgradient(blocks, lam0, iters, 0.5 * span)
        if val < best_val:
            best_val, best = val, lams
    if polish:
        best_val, best = _polish(blocks, best)

    # exact evaluation; try a few small denominators so exact optima snap
    cands = []
    for den in (2, 3, 4, 6, 8, 12, 16, 24, 32, 64, 10**3, 10**6, 10**9):
        bary = [_rationalise(l, den) for l in best]
        dsq, pts = _exact_diam_sq(verts, bary)
        cands.append((dsq, den, bary, pts))
    dsq, _, bary, pts = min(cands, key=lambda c: (c[0], c[1]))
    lower = dual_lower_bound(verts, pts)
    value = math.sqrt(float(dsq))
    return TransversalSolution(
        bary=bary,
        points=pts,
        value=value,
        value_sq=dsq,
        certified_gap=lower,
        iterations=iters * len(starts),
        converged=value - float(lower) <= tol,
    )
