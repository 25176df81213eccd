"""JSON codecs for bodies and groups, artifact writers."""
from __future__ import annotations

from typing import Any

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from convex_cocompact.domain import AffineChart, ConeBody, ConvexBody, EllipsoidBody, PolytopeBody
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import ProjectiveMap

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _check_version(data: dict[str, Any]) -> None:
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"Unsupported schema_version {version!r}, expected {SCHEMA_VERSION}.")


def _shape_to_dict(body: ConvexBody) -> dict[str, Any]:
    chart = body.chart
    if isinstance(body, PolytopeBody):
        return {"type": "polytope", "vertices": chart.coords_many(body.vertices).tolist()}
    if isinstance(body, EllipsoidBody):
        return {
            "type": "ellipsoid",
            "center": chart.to_coords(body.center).tolist(),
            "axes": (chart.frame.T @ body.axes).T.tolist(),
        }
    if isinstance(body, ConeBody):
        return {"type": "cone", "vertex": chart.to_coords(body.apex).tolist(), "base": _shape_to_dict(body.base)}
    raise ValueError(f"No JSON encoding for {type(body).__name__}.")


def _shape_from_dict(chart: AffineChart, shape: dict[str, Any]) -> ConvexBody:
    kind = shape["type"]
    if kind in ("polytope", "hull"):
        key = "vertices" if kind == "polytope" else "points"
        return PolytopeBody(chart, np.array([chart.vector_from_coords(c) for c in shape[key]]))
    if kind == "ellipsoid":
        axes = chart.frame @ np.asarray(shape["axes"], dtype=float).T
        return EllipsoidBody(chart, chart.vector_from_coords(shape["center"]), axes)
    if kind == "cone":
        base = _shape_from_dict(chart, shape["base"])
        if not isinstance(base, EllipsoidBody):
            raise ValueError("Cone bases must be ellipsoids.")
        return ConeBody(chart, chart.vector_from_coords(shape["vertex"]), base)
    raise ValueError(f"Unknown body type {kind!r}.")


def body_to_dict(body: ConvexBody) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "chart": body.chart.covector.tolist(), "shape": _shape_to_dict(body)}


def body_from_dict(data: dict[str, Any]) -> ConvexBody:
    """Decode a body; `hull` shapes are reduced to polytopes."""
    _check_version(data)
    return _shape_from_dict(AffineChart(np.asarray(data["chart"], dtype=float)), data["shape"])


def group_to_dict(group: MatrixGroup) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": group.dim,
        "generators": [g.lift.reshape(-1).tolist() for g in group.generators],
        "labels": list(group.labels),
    }


def group_from_dict(data: dict[str, Any], **kwargs: Any) -> MatrixGroup:
    _check_version(data)
    d = int(data["dim"])
    generators = [ProjectiveMap(np.asarray(g, dtype=float).reshape(d, d)) for g in data["generators"]]
    return MatrixGroup(generators, data.get("labels"), **kwargs)


def read_json(path: str | Path) -> dict[str, Any]:
    """Load a JSON file; decoding errors keep their line and column."""
    with open(path) as f:
        return json.load(f)


def plain(value: Any) -> Any:
    """Recursively turn numpy scalars and arrays into JSON-ready Python values."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(plain(payload), sort_keys=True, indent=2)


def write_json(path: str | Path, payload: dict[str, Any]) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(dumps(payload) + "\n")
    log.info(f"Wrote {path}")


def write_csv(path: str | Path, frame: pd.DataFrame) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.17g")
    log.info(f"Wrote {path}")
