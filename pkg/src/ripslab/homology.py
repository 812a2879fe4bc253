"""Integer simplicial homology through Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .simplicial import SimplicialComplex, _components, dominated_core, flag_complex

__all__ = [
    "BoundaryMatrix",
    "HomologyProfile",
    "boundary_matrices",
    "smith_normal_form",
    "homology",
    "component_count",
    "flag_homology",
]


@dataclass
class BoundaryMatrix:
    """Sparse boundary map from k-faces (columns) to (k-1)-faces (rows)."""

    degree: int
    rows: list
    cols: list
    columns: list  # one {row index: +-1} dict per column

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.cols))

    def to_dense(self) -> list:
        M = [[0] * len(self.cols) for _ in self.rows]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                M[i][j] = v
        return M


@dataclass
class HomologyProfile:
    betti: list
    torsion: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)


def boundary_matrices(K: SimplicialComplex, up_to: int) -> list:
    """Boundary maps d_1 .. d_up_to with signs from sorted vertex order."""
    if K.cap is not None and up_to > K.cap:
        raise ValueError(f"faces above dimension {K.cap} were not enumerated")
    out = []
    for k in range(1, up_to + 1):
        rows = K.faces(k - 1)
        cols = K.faces(k)
        index = {f: i for i, f in enumerate(rows)}
        columns = []
        for f in cols:
            col = {}
            for i in range(len(f)):
                col[index[f[:i] + f[i + 1 :]]] = -1 if i % 2 else 1
            columns.append(col)
        out.append(BoundaryMatrix(k, rows, cols, columns))
    return out


def _dense_snf(M: list) -> list:
    """Invariant factors of a small dense integer matrix."""
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        # smallest nonzero |entry| in the trailing block, lowest (row, col) on ties
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
                )
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            # move the smallest remainder into the pivot position and retry
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, "r")
            for j in range(t, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), j, "c")
            _, k, kind = best
            if kind == "r":
                A[t], A[k] = A[k], A[t]
            else:
                for row in A:
                    row[t], row[k] = row[k], row[t]
        factors.append(abs(A[t][t]))
        t += 1
    return factors


def smith_normal_form(M) -> list:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Accepts a dense list of rows or a :class:`BoundaryMatrix`.  Unit pivots
    are eliminated sparsely first; whatever remains is reduced densely.
    """
    rows: dict = {}
    if isinstance(M, BoundaryMatrix):
        for j, col in enumerate(M.columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
    else:
        for i, row in enumerate(M):
            for j, v in enumerate(row):
                if v:
                    rows.setdefault(i, {})[j] = int(v)
    cols: dict = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            if c not in cols:
                continue
            cand = [r for r in cols[c] if abs(rows[r][c]) == 1]
            if not cand:
                continue
            r = min(cand)
            prow = rows.pop(r)
            pv = prow[c]
            for i in list(cols[c]):
                if i == r:
                    continue
                row = rows[i]
                f = row[c] * pv
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        if j not in row:
                            cols[j].add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        cols[j].discard(i)
                if not row:
                    del rows[i]
            for j in prow:
                cols[j].discard(r)
            del cols[c]
            for j in [j for j in prow if j in cols and not cols[j]]:
                del cols[j]
            units += 1
            progress = True

    rest_rows = sorted(r for r in rows if rows[r])
    rest_cols = sorted(c for c in cols if cols[c])
    dense = [[rows[r].get(c, 0) for c in rest_cols] for r in rest_rows]
    rest = _dense_snf(dense) if dense and rest_cols else []
    return [1] * units + _normalise(rest)


def _normalise(d: list) -> list:
    """Turn any diagonal into a divisibility chain (same abelian group)."""
    d = sorted(abs(x) for x in d if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


def homology(K: SimplicialComplex, up_to: Optional[int] = None) -> HomologyProfile:
    """Betti numbers and torsion coefficients in degrees 0..up_to."""
    top = K.dim if up_to is None else min(up_to, K.dim)
    if top < 0:
        return HomologyProfile([], [])
    need = top + 1
    if K.cap is not None:
        need = min(need, K.cap)
    mats = {bm.degree: bm for bm in boundary_matrices(K, need)}
    ranks = {}
    tors = {}
    for k, bm in mats.items():
        inv = smith_normal_form(bm) if bm.cols and bm.rows else []
        ranks[k] = len(inv)
        tors[k] = [x for x in inv if x > 1]
    betti, torsion = [], []
    for k in range(top + 1):
        ck = len(K.faces(k))
        b = ck - ranks.get(k, 0) - ranks.get(k + 1, 0)
        betti.append(b)
        torsion.append(tors.get(k + 1, []))
    return HomologyProfile(betti, torsion)


def component_count(K: SimplicialComplex) -> int:
    if not K.vertices:
        return 0
    return _components(K.vertices, K.facets)


def flag_homology(adj: dict, up_to: int) -> HomologyProfile:
    """Homology of a flag complex given by its graph, after removing dominated vertices."""
    core = dominated_core(adj)
    K = flag_complex(core, cap=up_to + 1)
    prof = homology(K, up_to)
    # pad with zeros when the core collapsed below the requested degree
    while len(prof.betti) < up_to + 1 and prof.betti:
        prof.betti.append(0)
        prof.torsion.append([])
    return prof
