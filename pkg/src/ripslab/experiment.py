"""Seeded batches of random lattice clouds run through the local and global checks.

Instance ``i`` of a batch draws from ``numpy.random.default_rng([seed, i])``,
so instances are independent of each other and of the worker count, and a
repeated run produces the identical report.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .formats import FORMAT, FormatError, cloud_to_json, rational, rational_str
from .homology import flag_homology
from .local_checks import betti_consequences, check_pi0_surjectivity
from .shadow import HullOracle
from .simplicial import PointCloud, adjacency, maximal_cliques

__all__ = ["ExperimentSpec", "random_lattice_cloud", "run_instance", "run_experiment", "CHECKS"]

CHECKS = ("pi0", "betti", "torsion")


@dataclass(frozen=True)
class ExperimentSpec:
    """A batch: ``count`` clouds in [lo, hi]^dim on the lattice (1/lattice) Z^dim."""

    seed: int = 0
    count: int = 200
    dim: int = 3
    min_points: int = 10
    max_points: int = 14
    lattice: int = 16
    box: tuple = (Fraction(0), Fraction(2))
    scale: Fraction = Fraction(1)
    checks: tuple = ("pi0", "betti")
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "box", tuple(Fraction(b) for b in self.box))
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "checks", tuple(self.checks))
        if self.dim not in (2, 3, 4):
            raise FormatError("dim must be 2, 3 or 4")
        if not 1 <= self.min_points <= self.max_points:
            raise FormatError("need 1 <= min_points <= max_points")
        if self.lattice < 1 or self.box[0] >= self.box[1]:
            raise FormatError("bad lattice or box")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise FormatError(f"unknown checks {sorted(bad)}")
        if self.seed < 0 or self.count < 0:
            raise FormatError("seed and count must be nonnegative")
        cells = int((self.box[1] - self.box[0]) * self.lattice) + 1
        if cells**self.dim < self.max_points:
            raise FormatError("lattice too coarse for max_points distinct points")

    def to_json(self) -> dict:
        d = asdict(self)
        d["box"] = [rational_str(b) for b in self.box]
        d["scale"] = rational_str(self.scale)
        d["checks"] = list(self.checks)
        d.pop("workers")
        return d

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentSpec":
        if doc.get("format", FORMAT) != FORMAT:
            raise FormatError(f"unsupported format {doc.get('format')!r}")
        known = {"seed", "count", "dim", "min_points", "max_points", "lattice", "box", "scale", "checks", "workers"}
        extra = set(doc) - known - {"format"}
        if extra:
            raise FormatError(f"unknown experiment keys {sorted(extra)}")
        kw = {k: v for k, v in doc.items() if k in known}
        if "box" in kw:
            kw["box"] = tuple(rational(b) for b in kw["box"])
        if "scale" in kw:
            kw["scale"] = rational(kw["scale"])
        try:
            return cls(**kw)
        except TypeError as exc:
            raise FormatError(str(exc)) from exc


def random_lattice_cloud(spec: ExperimentSpec, index: int) -> PointCloud:
    rng = np.random.default_rng([spec.seed, index])
    n = int(rng.integers(spec.min_points, spec.max_points + 1))
    lo, hi = spec.box
    steps = int((hi - lo) * spec.lattice)
    pts: list = []
    seen: set = set()
    while len(pts) < n:
        k = tuple(int(x) for x in rng.integers(0, steps + 1, size=spec.dim))
        if k in seen:
            continue
        seen.add(k)
        pts.append(tuple(lo + Fraction(c, spec.lattice) for c in k))
    return PointCloud(tuple(pts), spec.scale, True)


def run_instance(spec: ExperimentSpec, index: int) -> dict:
    cloud = random_lattice_cloud(spec, index)
    adj = adjacency(cloud)
    oracle = HullOracle(cloud)
    rec: dict = {"index": index, "points": len(cloud), "violations": []}
    if "pi0" in spec.checks:
        failing = []
        for v in cloud.ids:
            rep = check_pi0_surjectivity(cloud, v, adj, oracle)
            if not rep.passed:
                failing.append(v)
        rec["pi0_failing_vertices"] = failing
        if failing and spec.dim <= 3:
            rec["violations"].append(f"pi0 surjectivity fails at vertices {failing}")
    if "betti" in spec.checks:
        br = betti_consequences(cloud, oracle)
        rec["rips_betti"] = br.rips_betti
        rec["shadow_betti"] = br.shadow_betti
        rec["violations"].extend(br.violations)
    if "torsion" in spec.checks:
        top = max((len(c) for c in maximal_cliques(adj)), default=1) - 1
        prof = flag_homology(adj, max(top, 0))
        tors = {k: t for k, t in enumerate(prof.torsion) if t}
        rec["full_betti"] = prof.betti
        rec["torsion"] = {str(k): t for k, t in tors.items()}
        # torsion is evidence, not a contradiction of anything proven, except H_1 in the plane
        if spec.dim == 2 and 1 in tors:
            rec["violations"].append(f"planar H_1 torsion {tors[1]}")
    if rec["violations"]:
        rec["cloud"] = cloud_to_json(cloud)
    rec["lp_calls"] = oracle.lp_calls
    return rec


def _run_one(args):
    return run_instance(*args)


def run_experiment(spec: ExperimentSpec) -> dict:
    """Run the batch and aggregate counts; violating instances are dumped whole."""
    jobs = [(spec, i) for i in range(spec.count)]
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            recs = list(pool.map(_run_one, jobs))
    else:
        recs = [_run_one(j) for j in jobs]
    recs.sort(key=lambda r: r["index"])
    counts = {"instances": len(recs), "instances_with_violations": sum(bool(r["violations"]) for r in recs)}
    if "pi0" in spec.checks:
        counts["pi0_vertices_checked"] = sum(r["points"] for r in recs)
        counts["pi0_vertices_failing"] = sum(len(r["pi0_failing_vertices"]) for r in recs)
        counts["pi0_instances_passing"] = sum(not r["pi0_failing_vertices"] for r in recs)
    if "betti" in spec.checks:
        counts["beta0_equal"] = sum(r["rips_betti"][0] == r["shadow_betti"][0] for r in recs)
        counts["beta1_equal"] = sum(r["rips_betti"][1] == r["shadow_betti"][1] for r in recs)
        counts["beta1_shadow_smaller"] = sum(r["shadow_betti"][1] < r["rips_betti"][1] for r in recs)
    if "torsion" in spec.checks:
        counts["torsion_free"] = sum(not r["torsion"] for r in recs)
    compact = []
    for r in recs:
        c = {k: v for k, v in r.items() if k not in ("cloud",)}
        compact.append(c)
    return {
        "format": FORMAT,
        "spec": spec.to_json(),
        "counts": counts,
        "violations": [
            {"index": r["index"], "findings": r["violations"], "cloud": r["cloud"]} for r in recs if r["violations"]
        ],
        "instances": compact,
    }
