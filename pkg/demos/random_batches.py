"""Seeded batches in the plane and in R^3; prints the aggregate counts."""

import json
import sys

from ripslab.experiment import ExperimentSpec, run_experiment

count = int(sys.argv[1]) if len(sys.argv) > 1 else 50
for dim, checks in ((3, ("pi0", "betti")), (2, ("betti", "torsion"))):
    spec = ExperimentSpec(seed=dim, count=count, dim=dim, min_points=8, max_points=14, checks=checks)
    rep = run_experiment(spec)
    print(f"R^{dim}:", json.dumps(rep["counts"], sort_keys=True))
    for v in rep["violations"]:
        print("  violation", v["index"], v["findings"])
