"""JSON formats.  Rationals travel as "num/den" strings, every document
carries ``"format": "rips-lab/1"``, and keys are emitted sorted."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import EUCLIDEAN, PRODUCT_L1_L2, Metric
from .homology import HomologyProfile
from .simplicial import PointCloud, SimplicialComplex
from .universality import EmbeddedComplex

FORMAT = "rips-lab/1"

__all__ = [
    "FORMAT",
    "FormatError",
    "rational",
    "rational_str",
    "dumps",
    "cloud_to_json",
    "cloud_from_json",
    "complex_to_json",
    "complex_from_json",
    "profile_to_json",
    "profile_from_json",
    "embedded_to_json",
    "embedded_from_json",
]


class FormatError(ValueError):
    """Malformed or unsupported document."""


def rational(x) -> Fraction:
    """Parse an int, "num/den" or decimal string.  Floats are refused."""
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"{x!r}: write rationals as strings or integers")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {x!r}") from exc


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _check_format(doc: dict) -> None:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise FormatError(f"unsupported format {fmt!r}")


def _vid(key):
    # JSON object keys are strings; integer-looking ids come back as ints
    if isinstance(key, str) and key.lstrip("-").isdigit():
        return int(key)
    return key


def cloud_to_json(cloud: PointCloud) -> dict:
    doc = {
        "format": FORMAT,
        "dim": cloud.dim,
        "scale": rational_str(cloud.scale),
        "strict": cloud.strict,
        "metric": cloud.metric.kind,
        "points": [[rational_str(c) for c in p] for p in cloud.points],
    }
    if cloud.ids != tuple(range(len(cloud))):
        doc["ids"] = list(cloud.ids)
    return doc


def cloud_from_json(doc: dict, scale=None, strict=None) -> PointCloud:
    """Point cloud from its document; ``scale``/``strict`` override the stored values."""
    _check_format(doc)
    try:
        pts = tuple(tuple(rational(c) for c in p) for p in doc["points"])
    except (KeyError, TypeError) as exc:
        raise FormatError("cloud needs a 'points' list of coordinate lists") from exc
    dim = doc.get("dim")
    if dim is not None and any(len(p) != dim for p in pts):
        raise FormatError(f"points do not all have dimension {dim}")
    kind = doc.get("metric", "euclidean")
    metric = {"euclidean": EUCLIDEAN, "product_l1_l2": PRODUCT_L1_L2}.get(kind)
    if metric is None:
        raise FormatError(f"unknown metric {kind!r}")
    sc = rational(scale if scale is not None else doc.get("scale", 1))
    st = doc.get("strict", True) if strict is None else strict
    ids = doc.get("ids")
    try:
        return PointCloud(pts, sc, bool(st), metric, None if ids is None else tuple(ids))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "format": FORMAT,
        "dim": K.dim,
        "vertices": list(K.vertices),
        "maximal_faces": [list(f) for f in K.facets],
    }


def complex_from_json(doc: dict) -> SimplicialComplex:
    _check_format(doc)
    try:
        faces = [tuple(f) for f in doc["maximal_faces"]]
    except (KeyError, TypeError) as exc:
        raise FormatError("complex needs 'maximal_faces'") from exc
    return SimplicialComplex(faces, doc.get("vertices", ()))


def profile_to_json(p: HomologyProfile) -> dict:
    return {"format": FORMAT, **p.to_json()}


def profile_from_json(doc: dict) -> HomologyProfile:
    _check_format(doc)
    return HomologyProfile(list(doc["betti"]), [list(t) for t in doc.get("torsion", [])])


def embedded_to_json(ec: EmbeddedComplex) -> dict:
    return {
        "format": FORMAT,
        "dim": ec.ambient_dim,
        "vertices": {str(v): [rational_str(c) for c in p] for v, p in sorted(ec.coords.items())},
        "maximal_faces": [list(f) for f in ec.complex.facets],
    }


def embedded_from_json(doc: dict) -> EmbeddedComplex:
    _check_format(doc)
    try:
        coords = {_vid(k): tuple(rational(c) for c in p) for k, p in doc["vertices"].items()}
        faces = [tuple(_vid(v) if isinstance(v, str) else v for v in f) for f in doc["maximal_faces"]]
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError("embedded complex needs 'vertices' {id: coords} and 'maximal_faces'") from exc
    dim = doc.get("dim")
    if dim is not None and any(len(p) != dim for p in coords.values()):
        raise FormatError(f"coordinates do not all have dimension {dim}")
    try:
        return EmbeddedComplex(SimplicialComplex(faces, coords.keys()), coords)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
