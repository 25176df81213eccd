"""Command line front end: `convex-cocompact command=<name> key=value ...`."""
from __future__ import annotations

from typing import Any, Callable

import json
import logging
import sys
from dataclasses import dataclass, field

import hydra
import numpy as np
import pandas as pd
from hydra.utils import to_absolute_path
from omegaconf import DictConfig, OmegaConf
from rich import print as printr

from convex_cocompact import anosov, catalog, domain, flow, group, projlin
from convex_cocompact.errors import BudgetError, Diagnostic, PreconditionError
from convex_cocompact.flow.dynamics import MAX_POWER
from convex_cocompact.group.ball import MAX_ELEMENTS
from convex_cocompact.group.centralizer import MATCH_TOL
from convex_cocompact.group.limit import CLUSTER_TOL, DEPTH_THRESHOLD
from convex_cocompact.io import (
    body_from_dict,
    body_to_dict,
    dumps,
    group_from_dict,
    group_to_dict,
    read_json,
    write_csv,
    write_json,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_DIAGNOSTIC = 0, 1, 2, 3, 4


def _section(cfg: DictConfig, key: str) -> dict[str, Any]:
    node = cfg.get(key)
    return dict(OmegaConf.to_container(node)) if node is not None else {}


@dataclass
class RunConfig:
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    budgets: dict[str, Any] = field(default_factory=dict)
    output_path: str | None = None
    output_format: str = "json"
    progress: bool = False

    @classmethod
    def from_cfg(cls, cfg: DictConfig) -> RunConfig:
        output = cfg.get("output") or {}
        fmt = output.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ValueError(f"Unknown output format {fmt!r}.")
        path = output.get("path")
        return cls(
            seed=int(cfg.get("seed", 0)),
            tolerances=_section(cfg, "tolerances"),
            budgets=_section(cfg, "budgets"),
            output_path=to_absolute_path(path) if path else None,
            output_format=fmt,
            progress=bool(cfg.get("progress", False)),
        )


@dataclass
class Result:
    """Payload of a subcommand and, for tabular outputs, the frame written in csv mode."""

    payload: dict[str, Any]
    frame: pd.DataFrame | None = None


@dataclass
class Inputs:
    body: domain.ConvexBody | None
    group: group.MatrixGroup | None
    base_point: projlin.ProjectivePoint | None
    entry: catalog.CatalogEntry | None = None


def _word(value: Any) -> tuple[str, ...]:
    if value is None or value in ("", "id"):
        return ()
    if isinstance(value, str):
        return tuple(value.split("*"))
    return tuple(str(v) for v in value)


def _inputs(cfg: DictConfig, rc: RunConfig) -> Inputs:
    max_elements = int(rc.budgets.get("max_elements", MAX_ELEMENTS))
    if cfg.get("example"):
        entry = catalog.load_example(cfg.example)
        entry.group.max_elements = max_elements
        entry.group.progress = rc.progress
        return Inputs(entry.domain, entry.group, entry.base_point, entry)
    body = body_from_dict(read_json(to_absolute_path(cfg.body))) if cfg.get("body") else None
    grp = None
    if cfg.get("group"):
        grp = group_from_dict(read_json(to_absolute_path(cfg.group)), max_elements=max_elements, progress=rc.progress)
    base = body.interior_point() if body is not None else None
    return Inputs(body, grp, base)


def _require(inputs: Inputs, body: bool = True, grp: bool = False) -> None:
    if body and inputs.body is None:
        raise KeyError("This command needs `body` or `example`.")
    if grp and inputs.group is None:
        raise KeyError("This command needs `group` or `example`.")


def _point(body: domain.ConvexBody, coords: Any) -> projlin.ProjectivePoint:
    return body.chart.from_coords([float(c) for c in coords])


def _coords(body: domain.ConvexBody, p: projlin.ProjectivePoint) -> list[float]:
    return body.chart.to_coords(p).tolist()


def cmd_dist(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs)
    d = domain.hilbert_distance(inputs.body, _point(inputs.body, cfg.x), _point(inputs.body, cfg.y))
    return Result({"distance": d})


def cmd_geodesic(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs)
    p = domain.geodesic_point(inputs.body, _point(inputs.body, cfg.x), _point(inputs.body, cfg.eta), float(cfg.t))
    return Result({"point": _coords(inputs.body, p)})


def _limit_sample(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> group.LimitSetSample:
    depth = inputs.entry.limit_depth if inputs.entry is not None else DEPTH_THRESHOLD
    return group.orbital_limit_set(
        inputs.group,
        inputs.body,
        inputs.base_point,
        int(cfg.L),
        cluster_tol=float(rc.tolerances.get("cluster", CLUSTER_TOL)),
        depth=depth,
    )


def cmd_limit_set(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    sample = _limit_sample(cfg, rc, inputs)
    coords = inputs.body.chart.coords_many(sample.vectors) if len(sample) else np.zeros((0, inputs.body.dim - 1))
    frame = pd.DataFrame(coords, columns=[f"x{i + 1}" for i in range(inputs.body.dim - 1)])
    payload = {"points": coords, "words": ["*".join(w.word) for w in sample.witnesses], "diagnostic": sample.diagnostic}
    return Result(payload, frame)


def cmd_core(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    sample = _limit_sample(cfg, rc, inputs)
    if len(sample) == 0:
        raise PreconditionError(f"Empty limit set sample: {sample.diagnostic}")
    core = domain.convex_hull_connected(sample.points, [inputs.body.chart])
    payload = {"core": body_to_dict(core), "vertices": len(core.vertices)}
    if inputs.entry is not None and inputs.entry.truth.get("core") == "domain":
        payload["hausdorff_to_domain"] = domain.hausdorff_distance(inputs.body, core)
    return Result(payload)


def cmd_cocompactness(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    depth = inputs.entry.limit_depth if inputs.entry is not None else DEPTH_THRESHOLD
    core = group.convex_core_approx(
        inputs.group,
        inputs.body,
        int(cfg.L),
        inputs.base_point,
        cluster_tol=float(rc.tolerances.get("cluster", CLUSTER_TOL)),
        depth=depth,
    )
    radius = group.cocompactness_radius(
        inputs.group, inputs.body, core, inputs.base_point, int(cfg.L), samples=int(cfg.samples), seed=rc.seed
    )
    return Result({"radius": radius, "core_vertices": len(core.vertices)})


def cmd_centralizer(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    A = [inputs.group.evaluate(_word(w)) for w in cfg.words]
    result = group.centralizer_fixed_subspace(
        A, _limit_sample(cfg, rc, inputs), inputs.body, match_tol=float(rc.tolerances.get("match", MATCH_TOL))
    )
    payload = {
        "dim": result.V.dim,
        "components": [{"dim": c.space.dim, "characters": list(c.characters)} for c in result.components],
        "fixed_points": [p.direction for p in result.fixed_points],
    }
    return Result(payload)


def cmd_classify(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    g = inputs.group.evaluate(_word(cfg.word))
    data = projlin.classify_proximal(g, gap_tol=float(rc.tolerances.get("gap", 1e-8)))
    payload = {
        "proximal": data.is_proximal,
        "biproximal": data.is_biproximal,
        "translation_length": projlin.translation_length(g),
        "attracting": data.attracting.direction if data.attracting is not None else None,
        "repelling": data.repelling.direction if data.repelling is not None else None,
        "rank_one": bool(group.is_rank_one(g, inputs.body)) if data.is_biproximal else False,
    }
    return Result(payload)


def cmd_rank_one(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    found = group.rank_one_elements(inputs.group, inputs.body, int(cfg.L))
    words = ["*".join(w) for w, _ in found]
    return Result({"count": len(found), "words": words}, pd.DataFrame({"word": words}))


def cmd_translation(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    g = inputs.group.evaluate(_word(cfg.word))
    sample = group.minimal_translation_sample(g, inputs.body, grid=int(rc.budgets.get("grid", 200)), seed=rc.seed)
    payload = {
        "tau": sample.tau,
        "lower_bound": sample.lower_bound,
        "argmin": [_coords(inputs.body, p) for p in sample.argmin],
    }
    return Result(payload, pd.DataFrame({"value": sample.values}))


def cmd_edge_projection(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    if not isinstance(inputs.body, domain.PolytopeBody):
        raise PreconditionError("Edge projections need a simplex body.")
    A = [inputs.group.evaluate(_word(w)) for w in cfg.words]
    T = group.simplex_edge_projection(inputs.body, A, int(cfg.vertex), seed=rc.seed)
    return Result({"rank": T.rank, "matrix": T.rep})


def cmd_flow(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs)
    v = flow.UnitTangent.through(inputs.body, _point(inputs.body, cfg.x), _point(inputs.body, cfg.y))
    w = flow.flow(inputs.body, v, float(cfg.t))
    payload = {
        "base": _coords(inputs.body, w.base),
        "backward": _coords(inputs.body, w.backward),
        "forward": _coords(inputs.body, w.forward),
        "offset": w.offset,
    }
    return Result(payload)


def cmd_shadow(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    g = inputs.group.evaluate(_word(cfg.word))
    data = projlin.classify_proximal(g)
    if not data.is_biproximal:
        raise PreconditionError(f"Word {cfg.word} is not biproximal; it has no axis to shadow.")
    w = _point(inputs.body, cfg.eta) if cfg.get("eta") is not None else None
    if w is None:
        # default backward endpoint: first boundary sample point away from the axis
        for vec in inputs.body.boundary_sample(16):
            cand = projlin.ProjectivePoint(vec)
            if cand.angle_to(data.attracting) > 0.1 and cand.angle_to(data.repelling) > 0.1:
                w = cand
                break
        else:
            raise PreconditionError("No boundary sample point is admissible as a backward endpoint; pass eta.")
    profile = flow.axis_shadowing_error(inputs.body, g, w, T=float(rc.budgets.get("flow_T", 20.0)))
    frame = profile.to_frame().rename(columns={"distance": "value"})
    return Result({"t": profile.times, "value": profile.values, "shift": profile.shift}, frame)


def _box(inputs: Inputs, word: Any, radius: float) -> flow.EndpointBox:
    data = projlin.classify_proximal(inputs.group.evaluate(_word(word)))
    if not data.is_biproximal:
        raise PreconditionError(f"Box center word {word} is not biproximal.")
    return flow.EndpointBox(data.repelling, data.attracting, radius=radius)


def cmd_transitivity(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    radius = float(cfg.get("box_radius", 0.05))
    U, V = _box(inputs, cfg.u, radius), _box(inputs, cfg.v, radius)
    witness = flow.transitivity_experiment(
        inputs.group, inputs.body, U, V, int(cfg.L), max_power=int(rc.budgets.get("search_budget", MAX_POWER))
    )
    if not witness.found:
        raise BudgetError(f"Transitivity search exhausted: {witness.diagnostic}")
    return Result({"found": True, "word": "*".join(witness.word), "length": len(witness.word), "t": witness.t})


def cmd_minimality(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    rng = np.random.default_rng(rc.seed)
    boundary = inputs.body.boundary_sample(256)
    picks = rng.choice(len(boundary), size=int(cfg.samples), replace=False)
    eps = [
        group.boundary_orbit_density(
            inputs.group,
            inputs.body,
            inputs.body,
            projlin.ProjectivePoint(boundary[i]),
            int(cfg.L),
            tol=float(rc.tolerances.get("boundary", 1e-6)),
        )
        for i in picks
    ]
    frame = pd.DataFrame({"sample": np.arange(len(eps)), "epsilon": eps})
    return Result({"epsilon": eps, "max": max(eps)}, frame)


def cmd_gap_audit(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, body=False, grp=True)
    profile = anosov.gap_profile(inputs.group, int(cfg.k), int(cfg.L))
    payload = {"k": profile.k, "slope": profile.slope, "intercept": profile.intercept, "r_squared": profile.r_squared}
    return Result(payload, profile.to_frame())


def cmd_boundary_map(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, body=False, grp=True)
    sample = anosov.boundary_map_sample(inputs.group, int(cfg.L))
    if len(sample) == 0:
        raise Diagnostic(sample.diagnostic)
    report = anosov.transversality_check(sample)
    chart = anosov.chart_boundedness(sample, seed=rc.seed)
    payload = {
        "lines": sample.lines,
        "normals": sample.normals,
        "min_angle": report.min_angle,
        "chart": chart.chart.covector,
        "margin": chart.margin,
    }
    return Result(payload, pd.DataFrame(sample.lines, columns=[f"v{i + 1}" for i in range(sample.lines.shape[1])]))


def cmd_collinear(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    sample = _limit_sample(cfg, rc, inputs)
    if len(sample) == 0:
        raise PreconditionError(f"Empty limit set sample: {sample.diagnostic}")
    scan = anosov.collinear_triples(sample.vectors, tol=float(rc.tolerances.get("collinear", 1e-6)))
    payload = {"points": len(scan.points), "collinear": len(scan), "min_ratio": scan.min_ratio, "triples": scan.triples}
    return Result(payload, pd.DataFrame(scan.triples, columns=["i", "j", "k"]))


def cmd_invariant_domain(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    _require(inputs, grp=True)
    sample = anosov.boundary_map_sample(inputs.group, int(cfg.L))
    if len(sample) == 0:
        raise Diagnostic(sample.diagnostic)
    body = anosov.invariant_domain_from_limit(inputs.group, sample, inputs.base_point, L=int(cfg.L))
    return Result({"domain": body_to_dict(body), "drift": anosov.generator_drift(inputs.group, body)})


def cmd_catalog(cfg: DictConfig, rc: RunConfig, inputs: Inputs) -> Result:
    if cfg.get("action", "list") == "list":
        names = catalog.list_examples()
        return Result({"examples": names}, pd.DataFrame({"name": names}))
    entry = catalog.load_example(cfg.name)
    return Result({"name": entry.name, "domain": body_to_dict(entry.domain), "group": group_to_dict(entry.group)})


COMMANDS: dict[str, Callable[[DictConfig, RunConfig, Inputs], Result]] = {
    "dist": cmd_dist,
    "geodesic": cmd_geodesic,
    "limit-set": cmd_limit_set,
    "core": cmd_core,
    "cocompactness": cmd_cocompactness,
    "centralizer": cmd_centralizer,
    "classify": cmd_classify,
    "rank-one": cmd_rank_one,
    "translation": cmd_translation,
    "edge-projection": cmd_edge_projection,
    "flow": cmd_flow,
    "shadow": cmd_shadow,
    "transitivity": cmd_transitivity,
    "minimality": cmd_minimality,
    "gap-audit": cmd_gap_audit,
    "boundary-map": cmd_boundary_map,
    "collinear": cmd_collinear,
    "invariant-domain": cmd_invariant_domain,
    "catalog": cmd_catalog,
}


def _emit(result: Result, rc: RunConfig) -> None:
    printr(json.loads(dumps(result.payload)))
    if rc.output_path is None:
        return
    if rc.output_format == "csv":
        if result.frame is None:
            raise ValueError("This command has no tabular output; use output.format=json.")
        write_csv(rc.output_path, result.frame)
    else:
        write_json(rc.output_path, result.payload)


def run(cfg: DictConfig) -> int:
    """Run one subcommand and map its outcome to an exit code.

    0 on success, 1 for malformed input, 2 for failed preconditions, 3 for exhausted budgets and 4 for
    diagnostic outcomes.
    """
    try:
        rc = RunConfig.from_cfg(cfg)
        command = cfg.command
        if command not in COMMANDS:
            raise KeyError(f"Unknown command {command!r}; choose one of {sorted(COMMANDS)}.")
        inputs = _inputs(cfg, rc) if command != "catalog" else Inputs(None, None, None)
        result = COMMANDS[command](cfg, rc, inputs)
        _emit(result, rc)
    except json.JSONDecodeError as err:
        log.error(f"Malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}")
        return EXIT_INPUT
    except PreconditionError as err:
        log.error(f"Precondition failed: {err}")
        return EXIT_PRECONDITION
    except BudgetError as err:
        log.error(f"Budget exhausted: {err}")
        return EXIT_BUDGET
    except Diagnostic as err:
        log.error(f"Diagnostic: {err}")
        return EXIT_DIAGNOSTIC
    except (KeyError, ValueError, FileNotFoundError) as err:
        log.error(f"Invalid input: {err}")
        return EXIT_INPUT
    return EXIT_OK


@hydra.main("configs", "base", version_base="1.1")  # type: ignore[misc]
def main(cfg: DictConfig) -> None:
    """Entry point of the `convex-cocompact` console script."""
    code = run(cfg)
    if code != EXIT_OK:
        sys.exit(code)


if __name__ == "__main__":
    main()
