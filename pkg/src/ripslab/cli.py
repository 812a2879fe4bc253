"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 a finding that
contradicts a proven statement (dumped in the report).
"""

from __future__ import annotations

import argparse
import json
import sys

from .formats import (
    FormatError,
    cloud_from_json,
    cloud_to_json,
    complex_from_json,
    complex_to_json,
    dumps,
    embedded_from_json,
    profile_to_json,
    rational,
)
from .gallery import GALLERY, CertificateError
from .geometry import GeometryError
from .homology import flag_homology, homology
from .local_checks import TheoremViolation, check_pi0_surjectivity, classify_planar_pseudomanifold
from .shadow import HullOracle, shadow_betti
from .simplicial import PointCloud, adjacency, rips_complex

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _load(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from exc


def _emit(doc, out):
    text = dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cloud(args) -> PointCloud:
    if not args.input:
        raise _UsageError("--input is required")
    return cloud_from_json(_load(args.input), scale=args.scale, strict=args.strict)


def _cmd_rips(args):
    cloud = _cloud(args)
    K = rips_complex(cloud, args.max_dim)
    return complex_to_json(K), EXIT_OK


def _cmd_shadow(args):
    cloud = _cloud(args)
    up_to = 1 if args.max_dim is None else args.max_dim
    b = shadow_betti(cloud, up_to)
    return {"format": "rips-lab/1", "shadow_betti": b, "points": len(cloud)}, EXIT_OK


def _cmd_homology(args):
    if not args.input:
        raise _UsageError("--input is required")
    doc = _load(args.input)
    if "maximal_faces" in doc:
        K = complex_from_json(doc)
        prof = homology(K, args.max_dim)
    else:
        cloud = cloud_from_json(doc, scale=args.scale, strict=args.strict)
        adj = adjacency(cloud)
        top = args.max_dim
        if top is None:
            top = rips_complex(cloud).dim
        prof = flag_homology(adj, max(top, 0))
    return profile_to_json(prof), EXIT_OK


def _cmd_local_pi0(args):
    cloud = _cloud(args)
    adj = adjacency(cloud)
    oracle = HullOracle(cloud)
    verts = [args.vertex] if args.vertex is not None else list(cloud.ids)
    for v in verts:
        if v not in cloud.ids:
            raise FormatError(f"vertex {v} not in cloud")
    reports = [check_pi0_surjectivity(cloud, v, adj, oracle).to_json() for v in verts]
    failing = [r["vertex"] for r in reports if not r["pass"]]
    # the statement is proven only up to dimension 3
    asserted = cloud.dim <= 3
    doc = {"format": "rips-lab/1", "dim": cloud.dim, "asserted": asserted, "reports": reports}
    if failing and asserted:
        doc["violation"] = {"failing_vertices": failing, "cloud": cloud_to_json(cloud)}
        return doc, EXIT_VIOLATION
    return doc, EXIT_OK


def _cmd_classify(args):
    cloud = _cloud(args)
    try:
        c = classify_planar_pseudomanifold(cloud)
    except TheoremViolation as exc:
        return {"format": "rips-lab/1", "violation": exc.dump, "message": str(exc).split(":")[0]}, EXIT_VIOLATION
    return {"format": "rips-lab/1", "kind": c.kind, "dim": c.dim}, EXIT_OK


def _cmd_realize(args):
    from .universality import realize

    if not args.input:
        raise _UsageError("--input is required")
    ec = embedded_from_json(_load(args.input))
    eps = None if args.eps is None else rational(args.eps)
    rep = realize(ec, eps, sampler=args.sampler, max_points=args.max_points)
    doc = {"format": "rips-lab/1", **rep.to_json()}
    if args.with_cloud:
        doc["cloud"] = cloud_to_json(rep.samples.cloud(rep.eps))
        doc["carriers"] = [list(c) for c in rep.samples.carriers]
    return doc, EXIT_OK


def _cmd_gallery(args):
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise _UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k] = int(v) if k == "d" else rational(v)
    builder = GALLERY[args.name]
    try:
        out = builder(**params)
    except TypeError as exc:
        raise _UsageError(f"bad parameters for {args.name}: {exc}") from exc
    if isinstance(out, PointCloud):
        return cloud_to_json(out), EXIT_OK
    pts, metric, scale = out
    return cloud_to_json(PointCloud(pts, scale, True, metric)), EXIT_OK


def _cmd_experiment(args):
    from .experiment import ExperimentSpec, run_experiment

    doc = _load(args.spec_file)
    if args.seed is not None:
        doc = {**doc, "seed": args.seed}
    spec = ExperimentSpec.from_json(doc)
    rep = run_experiment(spec)
    return rep, (EXIT_VIOLATION if rep["violations"] else EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--scale", type=str, help="Rips scale as a rational, e.g. 1 or 3/4")
    common.add_argument("--strict", dest="strict", action="store_true", default=None,
                        help="faces need diameter < scale (default)")
    common.add_argument("--non-strict", dest="strict", action="store_false", help="faces need diameter <= scale")
    common.add_argument("--max-dim", type=int, help="highest face dimension / homology degree")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed (experiment only)")

    p = _Parser(prog="ripslab", description="Rips complexes of Euclidean point sets.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("rips", parents=[common], help="Rips complex of a point cloud")
    sub.add_parser("shadow", parents=[common], help="Betti numbers of the shadow")
    sub.add_parser("homology", parents=[common], help="homology of a complex or of a cloud's Rips complex")
    lp = sub.add_parser("local-pi0", parents=[common], help="pi_0 surjectivity check at one or all vertices")
    lp.add_argument("--vertex", type=int)
    sub.add_parser("classify", parents=[common], help="classify a planar Rips pseudomanifold")
    rz = sub.add_parser("realize", parents=[common], help="finite Rips model of an embedded complex")
    rz.add_argument("--eps", help="scale below eps0 (default: half the certified lower bound)")
    rz.add_argument("--sampler", choices=["auto", "plan", "adaptive"], default="auto")
    rz.add_argument("--max-points", type=int, default=20000)
    rz.add_argument("--with-cloud", action="store_true", help="include the sample and carriers")
    g = sub.add_parser("gallery", parents=[common], help="certified named configurations")
    g.add_argument("name", choices=sorted(GALLERY))
    g.add_argument("--param", action="append", help="key=value, e.g. c=57/100 or d=2")
    e = sub.add_parser("experiment", parents=[common], help="seeded random batch")
    e.add_argument("spec_file")
    return p


_COMMANDS = {
    "rips": _cmd_rips,
    "shadow": _cmd_shadow,
    "homology": _cmd_homology,
    "local-pi0": _cmd_local_pi0,
    "classify": _cmd_classify,
    "realize": _cmd_realize,
    "gallery": _cmd_gallery,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError(parser.format_usage().strip())
        if args.scale is not None:
            args.scale = rational(args.scale)
        doc, code = _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, GeometryError, CertificateError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
