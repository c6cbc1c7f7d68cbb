"""Configuration-driven command line front end.

One YAML config fully describes a run: the topology, the source
entropies, a strategy with fixed parameters or a search request, and a
command (evaluate, min-power, sweep, region, cf-min-noise).  Results go
to a CSV file next to a manifest that echoes the resolved configuration;
re-running the manifest reproduces the CSV byte for byte.

Defaults kappa=1, eta=2 and unit receiver noise are declared assumptions
of this tool, not measured values.
"""
from __future__ import annotations

import argparse
import copy
import csv
import json
import math
import sys
from dataclasses import asdict

import numpy as np
import yaml

from .errors import CapExceeded, ConfigError, MacfcsError
from .model import SourceTriple, Topology, triple_from_pmf
from .optimize import (
    STRATEGIES,
    SearchConfig,
    evaluate_point,
    min_power,
    region,
    sweep,
    _search_best,
)
from .strategies import (
    CfSplit,
    DfSplit,
    StrategyPoint,
    TimeShareMixture,
    cf_min_noise,
)

__version__ = "0.1.0"

REPORT_SCHEMA = ("label", "lhs_bits", "rhs_bits", "slack_bits", "feasible")
SWEEP_SCHEMA = ("swept_value", "strategy", "p_star", "witness_params_json")
MIN_POWER_SCHEMA = ("strategy", "objective", "p_star", "witness_params_json")
REGION_SCHEMA = ("kind", "r1_bits", "r2_bits", "strategy", "params_json")
CF_NOISE_SCHEMA = ("pu1", "pv1", "pu2", "pv2", "ntilde_star")

_COMMANDS = ("evaluate", "min-power", "sweep", "region", "cf-min-noise")


# ---------------------------------------------------------------------------
# config loading and validation
# ---------------------------------------------------------------------------

def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path!r} failed to parse: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path!r} must be a mapping of sections")
    return raw


def _require_mapping(cfg: dict, key: str) -> dict:
    if key not in cfg:
        raise ConfigError(f"{key}: section is required")
    sec = cfg[key]
    if not isinstance(sec, dict):
        raise ConfigError(f"{key}: must be a mapping")
    return sec


def _check_keys(sec: dict, allowed, path: str) -> None:
    for key in sec:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}: unknown key")


def _number(sec: dict, key: str, path: str, default=None):
    if key not in sec:
        if default is None:
            raise ConfigError(f"{path}.{key}: required")
        return default
    v = sec[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{path}.{key}: must be a number")
    return float(v)


def _vector(sec: dict, key: str, path: str, length=None, default=None):
    if key not in sec:
        if default is None:
            raise ConfigError(f"{path}.{key}: required")
        return default
    v = sec[key]
    if not isinstance(v, (list, tuple)):
        raise ConfigError(f"{path}.{key}: must be a list of numbers")
    if length is not None and len(v) != length:
        raise ConfigError(f"{path}.{key}: expected {length} entries, got {len(v)}")
    out = []
    for item in v:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{path}.{key}: must be a list of numbers")
        out.append(float(item))
    return out


def resolve_config(raw: dict, seed: int | None = None, out: str | None = None,
                   precision: int | None = None) -> dict:
    """Apply command-line overrides and defaults, then validate strictly."""
    cfg = copy.deepcopy(raw)
    cfg.pop("meta", None)
    _check_keys(cfg, ("topology", "sources", "strategy", "command", "search",
                      "output"), "config")

    search = cfg.setdefault("search", {})
    if not isinstance(search, dict):
        raise ConfigError("search: must be a mapping")
    if seed is not None:
        search["rng_seed"] = int(seed)
    search.setdefault("rng_seed", 0)

    output = cfg.setdefault("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output: must be a mapping")
    if out is not None:
        output["path"] = out
    if precision is not None:
        output["precision"] = int(precision)
    output.setdefault("precision", 9)
    if "path" not in output:
        raise ConfigError("output.path: required (or pass --out)")
    _check_keys(output, ("path", "precision"), "output")
    if not isinstance(output["precision"], int) or output["precision"] < 1:
        raise ConfigError("output.precision: must be a positive integer")

    topo = _require_mapping(cfg, "topology")
    _check_keys(topo, ("coordinates", "distances", "kappa", "eta", "noise",
                       "power_limits"), "topology")
    topo.setdefault("kappa", 1.0)
    topo.setdefault("eta", 2.0)

    _require_mapping(cfg, "sources")
    _require_mapping(cfg, "strategy")
    _require_mapping(cfg, "command")

    build_topology(cfg)
    build_triple(cfg)
    build_search(cfg)
    _validate_strategy_and_command(cfg)
    return cfg


def build_topology(cfg: dict) -> Topology:
    sec = cfg["topology"]
    has_coords = "coordinates" in sec
    has_dist = "distances" in sec
    if has_coords == has_dist:
        raise ConfigError("topology: give exactly one of coordinates or distances")
    kappa = _number(sec, "kappa", "topology", 1.0)
    eta = _number(sec, "eta", "topology", 2.0)
    if kappa <= 0.0:
        raise ConfigError("topology.kappa: must be positive")
    if eta <= 0.0:
        raise ConfigError("topology.eta: must be positive")
    try:
        if has_coords:
            coords = np.array(sec["coordinates"], dtype=float)
            n = coords.shape[0] if coords.ndim == 2 else 0
            noise = _vector(sec, "noise", "topology", n, default=[1.0] * n)
            limits = _vector(sec, "power_limits", "topology", max(n - 1, 0))
            return Topology.from_coordinates(coords, kappa, eta, noise, limits)
        d = np.array(sec["distances"], dtype=float)
        n = d.shape[0] if d.ndim == 2 else 0
        noise = _vector(sec, "noise", "topology", n, default=[1.0] * n)
        limits = _vector(sec, "power_limits", "topology", max(n - 1, 0))
        return Topology(d, kappa, eta, noise, limits)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"topology: {exc}") from exc


def build_triple(cfg: dict) -> SourceTriple:
    sec = cfg["sources"]
    _check_keys(sec, ("triple", "pmf"), "sources")
    if ("triple" in sec) == ("pmf" in sec):
        raise ConfigError("sources: give exactly one of triple or pmf")
    if "triple" in sec:
        t = sec["triple"]
        if not isinstance(t, dict):
            raise ConfigError("sources.triple: must be a mapping")
        _check_keys(t, ("h1_given_2", "h2_given_1", "common"), "sources.triple")
        vals = {}
        for key in ("h1_given_2", "h2_given_1", "common"):
            vals[key] = _number(t, key, "sources.triple")
            if vals[key] < 0.0:
                raise ConfigError(f"sources.triple.{key}: entropies must be nonnegative")
        return SourceTriple(**vals)
    try:
        return triple_from_pmf(np.array(sec["pmf"], dtype=float))
    except MacfcsError as exc:
        raise ConfigError(f"sources.pmf: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"sources.pmf: {exc}") from exc


def build_search(cfg: dict) -> SearchConfig:
    sec = cfg.get("search", {})
    _check_keys(sec, ("multistarts", "grid_resolution", "rng_seed",
                      "refine_iterations", "bisection_tol", "power_cap"), "search")
    kwargs = {}
    for key, kind in (("multistarts", int), ("grid_resolution", int),
                      ("rng_seed", int), ("refine_iterations", int)):
        if key in sec:
            if isinstance(sec[key], bool) or not isinstance(sec[key], int):
                raise ConfigError(f"search.{key}: must be an integer")
            kwargs[key] = kind(sec[key])
    for key in ("bisection_tol", "power_cap"):
        if key in sec:
            kwargs[key] = _number(sec, key, "search")
    try:
        return SearchConfig(**kwargs)
    except MacfcsError as exc:
        raise ConfigError(f"search: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"search: {exc}") from exc


_STRATEGY_KEYS = {
    "df": ("name", "search", "alpha", "beta", "powers"),
    "cf": ("name", "search", "pu", "pv", "ntilde", "powers"),
    "maccc": ("name", "search", "powers"),
    "tdma_df": ("name", "search", "weights", "phases",
                "destination_decodes_all_phases", "powers"),
}


def _strategy_name(cfg: dict) -> str:
    sec = cfg["strategy"]
    name = sec.get("name")
    if name not in STRATEGIES:
        raise ConfigError(f"strategy.name: expected one of {STRATEGIES}, got {name!r}")
    _check_keys(sec, _STRATEGY_KEYS[name], "strategy")
    return name


def _strategy_powers(sec: dict, topology: Topology) -> tuple[float, float]:
    powers = _vector(sec, "powers", "strategy", 2,
                     default=list(topology.power_limits))
    if any(p < 0.0 for p in powers):
        raise ConfigError("strategy.powers: must be nonnegative")
    return (powers[0], powers[1])


def build_strategy_point(cfg: dict, topology: Topology) -> StrategyPoint | None:
    """Fixed-parameter strategy point from the config, or None for search."""
    name = _strategy_name(cfg)
    sec = cfg["strategy"]
    if sec.get("search", False):
        return None
    powers = _strategy_powers(sec, topology)
    try:
        if name == "df":
            alpha = _vector(sec, "alpha", "strategy", 4)
            beta = _vector(sec, "beta", "strategy", 4)
            return StrategyPoint("df", powers, df_split=DfSplit(tuple(alpha), tuple(beta)))
        if name == "cf":
            pu = _vector(sec, "pu", "strategy", 2)
            pv = _vector(sec, "pv", "strategy", 2)
            nt = _vector(sec, "ntilde", "strategy", 2)
            return StrategyPoint("cf", powers, cf_split=CfSplit(
                pu[0], pv[0], pu[1], pv[1], nt[0], nt[1]))
        if name == "maccc":
            return StrategyPoint("maccc", powers)
        weights = _vector(sec, "weights", "strategy", 3)
        phases = sec.get("phases")
        if not isinstance(phases, list) or len(phases) != 3:
            raise ConfigError("strategy.phases: must list exactly three phases")
        components = []
        for q, phase in enumerate(phases):
            if not isinstance(phase, dict):
                raise ConfigError(f"strategy.phases[{q}]: must be a mapping")
            _check_keys(phase, ("p1", "p2", "split1", "split2"), f"strategy.phases[{q}]")
            p1 = _number(phase, "p1", f"strategy.phases[{q}]", 0.0)
            p2 = _number(phase, "p2", f"strategy.phases[{q}]", 0.0)
            s1 = _vector(phase, "split1", f"strategy.phases[{q}]", 4,
                         default=[0.0, 0.0, 0.0, 1.0])
            s2 = _vector(phase, "split2", f"strategy.phases[{q}]", 4,
                         default=[0.0, 0.0, 0.0, 1.0])
            components.append((weights[q], StrategyPoint(
                "df", (p1, p2), df_split=DfSplit(tuple(s1), tuple(s2)))))
        mixture = TimeShareMixture(tuple(components))
        return StrategyPoint("tdma_df", mixture.average_powers(), mixture=mixture)
    except ConfigError:
        raise
    except MacfcsError as exc:
        raise ConfigError(f"strategy: {exc}") from exc


_COMMAND_KEYS = {
    "evaluate": ("name",),
    "min-power": ("name", "objective"),
    "sweep": ("name", "parameter", "values", "strategies", "objective"),
    "region": ("name", "resolution"),
    "cf-min-noise": ("name", "tol"),
}


def _command_name(cfg: dict) -> str:
    sec = cfg["command"]
    name = sec.get("name")
    if name not in _COMMANDS:
        raise ConfigError(f"command.name: expected one of {_COMMANDS}, got {name!r}")
    _check_keys(sec, _COMMAND_KEYS[name], "command")
    return name


def _validate_strategy_and_command(cfg: dict) -> None:
    topology = build_topology(cfg)
    name = _strategy_name(cfg)
    build_strategy_point(cfg, topology)
    command = _command_name(cfg)
    sec = cfg["command"]
    if command == "min-power":
        objective = sec.setdefault("objective", "symmetric")
        if objective not in ("symmetric", "sum"):
            raise ConfigError("command.objective: must be symmetric or sum")
    elif command == "sweep":
        parameter = sec.get("parameter")
        if parameter not in ("d12", "d13_d23", "common", "pu_fraction"):
            raise ConfigError("command.parameter: must be one of d12, d13_d23, "
                              "common, pu_fraction")
        values = sec.get("values")
        if not isinstance(values, list) or not values:
            raise ConfigError("command.values: must be a non-empty list")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)) \
                    or not math.isfinite(float(v)):
                raise ConfigError("command.values: entries must be finite numbers")
        strategies = sec.setdefault("strategies", [name])
        if not isinstance(strategies, list) or \
                any(s not in STRATEGIES for s in strategies):
            raise ConfigError(f"command.strategies: entries must be in {STRATEGIES}")
        sec.setdefault("objective", "symmetric")
        if sec["objective"] not in ("symmetric", "sum"):
            raise ConfigError("command.objective: must be symmetric or sum")
    elif command == "region":
        resolution = sec.setdefault("resolution", 5)
        if isinstance(resolution, bool) or not isinstance(resolution, int) \
                or resolution < 2:
            raise ConfigError("command.resolution: must be an integer >= 2")
        if name not in ("df", "cf", "maccc"):
            raise ConfigError("command: region supports df, cf and maccc strategies")
    elif command == "cf-min-noise":
        if name != "cf":
            raise ConfigError("command: cf-min-noise needs strategy.name = cf")
        if cfg["strategy"].get("search", False):
            raise ConfigError("command: cf-min-noise needs fixed pu/pv, not search")
        tol = sec.setdefault("tol", 1e-6)
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol <= 0:
            raise ConfigError("command.tol: must be a positive number")


# ---------------------------------------------------------------------------
# CSV and manifest output
# ---------------------------------------------------------------------------

def _format_cell(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{precision}g")
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def emit_csv(rows, schema, path: str, precision: int = 9) -> None:
    """Write rows (mappings) under a fixed header with deterministic formatting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(schema)
        for row in rows:
            writer.writerow([_format_cell(row.get(col), precision) for col in schema])


def write_manifest(cfg: dict, path: str) -> None:
    manifest = copy.deepcopy(cfg)
    manifest["meta"] = {"package": "macfcs", "version": __version__}
    with open(path, "w") as fh:
        yaml.safe_dump(manifest, fh, sort_keys=True)


# ---------------------------------------------------------------------------
# command execution
# ---------------------------------------------------------------------------

def _point_json(point: StrategyPoint | None) -> dict | None:
    return None if point is None else asdict(point)


def _run_evaluate(cfg, topology, triple, search_cfg):
    point = build_strategy_point(cfg, topology)
    flag = cfg["strategy"].get("destination_decodes_all_phases", True)
    if point is None:
        name = _strategy_name(cfg)
        powers = _strategy_powers(cfg["strategy"], topology)
        found, report = _search_best(name, topology, triple, powers, search_cfg)
        if report is None:
            return [], 2
    else:
        report = evaluate_point(topology, triple, point, tdma_full_decode=bool(flag))
    return report.rows(), 0 if report.feasible else 2


def _run_min_power(cfg, topology, triple, search_cfg):
    name = _strategy_name(cfg)
    objective = cfg["command"]["objective"]
    try:
        result = min_power(name, topology, triple, objective, search_cfg)
    except CapExceeded:
        row = {"strategy": name, "objective": objective, "p_star": math.inf,
               "witness_params_json": None}
        return [row], 2
    row = {"strategy": name, "objective": objective, "p_star": result.p_star,
           "witness_params_json": _point_json(result.witness)}
    return [row], 0


def _run_sweep(cfg, topology, triple, search_cfg):
    sec = cfg["command"]
    rows = sweep(sec["strategies"], topology, sec["parameter"],
                 [float(v) for v in sec["values"]], triple, search_cfg,
                 sec["objective"])
    out = [{"swept_value": r.value, "strategy": r.strategy, "p_star": r.p_star,
            "witness_params_json": r.detail} for r in rows]
    return out, 0


def _run_region(cfg, topology, triple, search_cfg):
    name = _strategy_name(cfg)
    powers = _strategy_powers(cfg["strategy"], topology)
    result = region(name, topology, powers, cfg["command"]["resolution"], search_cfg)
    rows = [{"kind": "point", "r1_bits": p.r1, "r2_bits": p.r2,
             "strategy": p.strategy, "params_json": _point_json(p.params)}
            for p in result.points]
    rows += [{"kind": "hull", "r1_bits": x, "r2_bits": y, "strategy": name,
              "params_json": None} for x, y in result.hull]
    return rows, 0


def _run_cf_min_noise(cfg, topology, triple, search_cfg):
    sec = cfg["strategy"]
    pu = _vector(sec, "pu", "strategy", 2)
    pv = _vector(sec, "pv", "strategy", 2)
    nt = cf_min_noise(topology, pu[0], pv[0], pu[1], pv[1],
                      float(cfg["command"]["tol"]))
    row = {"pu1": pu[0], "pv1": pv[0], "pu2": pu[1], "pv2": pv[1],
           "ntilde_star": math.inf if nt is None else nt}
    return [row], 0 if nt is not None else 2


_RUNNERS = {
    "evaluate": (_run_evaluate, REPORT_SCHEMA),
    "min-power": (_run_min_power, MIN_POWER_SCHEMA),
    "sweep": (_run_sweep, SWEEP_SCHEMA),
    "region": (_run_region, REGION_SCHEMA),
    "cf-min-noise": (_run_cf_min_noise, CF_NOISE_SCHEMA),
}


def run(cfg: dict, *, quiet: bool = False) -> int:
    """Execute a resolved configuration; returns the process exit status."""
    topology = build_topology(cfg)
    triple = build_triple(cfg)
    search_cfg = build_search(cfg)
    command = _command_name(cfg)
    runner, schema = _RUNNERS[command]
    rows, status = runner(cfg, topology, triple, search_cfg)
    out_path = cfg["output"]["path"]
    precision = cfg["output"]["precision"]
    emit_csv(rows, schema, out_path, precision)
    write_manifest(cfg, out_path + ".manifest.yaml")
    if not quiet:
        print(f"{command}: {len(rows)} rows -> {out_path} "
              f"({'ok' if status == 0 else 'infeasible'})")
    return status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="macfcs",
        description="Achievable-rate strategies and power optimization for the "
                    "three-node Gaussian multiple access channel with feedback "
                    "and correlated sources.")
    parser.add_argument("--config", required=True, help="YAML run configuration")
    parser.add_argument("--seed", type=int, default=None,
                        help="override search.rng_seed")
    parser.add_argument("--out", default=None, help="override output.path")
    parser.add_argument("--precision", type=int, default=None,
                        help="override output.precision (significant digits)")
    parser.add_argument("--quiet", action="store_true", help="suppress summary line")
    args = parser.parse_args(argv)
    try:
        raw = load_config(args.config)
        cfg = resolve_config(raw, seed=args.seed, out=args.out,
                             precision=args.precision)
        status = run(cfg, quiet=args.quiet)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
