"""Derivative-free search over strategy parameters.

Feasibility search (seeded multistart over structured and random
parameter points plus a coordinate-descent polish), transmit-power
minimization by bisection with a verification sweep, scenario sweeps,
and rate-region tracing with a time-sharing convex hull.

The feasible sets are cut out by minima of mutual-information
expressions, which are non-smooth and non-convex, so everything here is
gradient-free; determinism is guaranteed by deriving every random
stream from the configured seed and a stable candidate index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CapExceeded, InvalidTolerance
from .model import SourceTriple, Topology
from .strategies import (
    CfSplit,
    ConstraintReport,
    DfSplit,
    StrategyPoint,
    TimeShareMixture,
    cf_constraints,
    cf_min_noise,
    df_constraints,
    maccc_constraints,
    tdma_df_constraints,
)

STRATEGIES = ("df", "cf", "maccc", "tdma_df")


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and tolerances for all searches in this module."""

    multistarts: int = 12
    grid_resolution: int = 9
    rng_seed: int = 0
    refine_iterations: int = 10
    bisection_tol: float = 1e-4
    power_cap: float = 1e3

    def __post_init__(self):
        if self.multistarts < 1:
            raise ValueError("multistarts must be at least 1")
        if self.grid_resolution < 2:
            raise ValueError("grid_resolution must be at least 2")
        if self.refine_iterations < 0:
            raise ValueError("refine_iterations must be nonnegative")
        if int(self.rng_seed) != self.rng_seed or self.rng_seed < 0:
            raise ValueError("rng_seed must be a nonnegative integer")
        if not (self.bisection_tol > 0.0 and math.isfinite(self.bisection_tol)):
            raise InvalidTolerance("bisection_tol must be strictly positive")
        if not (self.power_cap > 0.0 and math.isfinite(self.power_cap)):
            raise ValueError("power_cap must be strictly positive")


@dataclass(frozen=True)
class RegionPoint:
    """One achievable (r1, r2) corner with the parameters that reach it."""

    r1: float
    r2: float
    strategy: str
    params: StrategyPoint | None = None


@dataclass(frozen=True)
class RegionResult:
    points: tuple[RegionPoint, ...]
    hull: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class MinPowerResult:
    """Outcome of the power bisection.

    ``p_star`` is per-node power for the symmetric objective and total
    power for the sum objective.  ``monotone`` is False when the
    verification sweep found a feasible point below an earlier bisection
    result (the listed ``suspect_levels``); the reported minimum already
    accounts for them.
    """

    p_star: float
    witness: StrategyPoint
    objective: str
    monotone: bool = True
    suspect_levels: tuple[float, ...] = ()


@dataclass(frozen=True)
class SweepRow:
    value: float
    strategy: str
    p_star: float
    detail: dict | None = None


def evaluate_point(topology: Topology, triple: SourceTriple, point: StrategyPoint,
                   *, tdma_full_decode: bool = True) -> ConstraintReport:
    """Dispatch a strategy point to its constraint evaluator."""
    if point.strategy == "df":
        if point.df_split is None:
            raise ValueError("decode-forward point needs df_split")
        return df_constraints(topology.with_power_limits(point.powers),
                              triple, point.df_split)
    if point.strategy == "cf":
        if point.cf_split is None:
            raise ValueError("compress-forward point needs cf_split")
        return cf_constraints(topology.with_power_limits(point.powers),
                              triple, point.cf_split)
    if point.strategy == "maccc":
        return maccc_constraints(topology.with_power_limits(point.powers),
                                 triple, *point.powers)
    if point.strategy == "tdma_df":
        if point.mixture is None:
            raise ValueError("time-share point needs a mixture")
        return tdma_df_constraints(topology, triple, point.mixture,
                                   tdma_full_decode)
    raise ValueError(f"unknown strategy {point.strategy!r}")


def _score(report: ConstraintReport) -> float:
    # entries with a vanished left side are always met; the rest need
    # positive slack, so feasibility is equivalent to a positive score
    slacks = [e.slack_bits for e in report.entries if e.lhs_bits > 0.0]
    return min(slacks) if slacks else math.inf


def _rng(config: SearchConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([config.rng_seed, stream])


# ---------------------------------------------------------------------------
# decode-forward search
# ---------------------------------------------------------------------------

def _df_candidates(config: SearchConfig):
    yield DfSplit((1.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0))
    yield DfSplit((0.0, 0.0, 0.0, 1.0), (0.0, 0.0, 0.0, 1.0))
    for c in np.linspace(0.0, 1.0, config.grid_resolution):
        r = (1.0 - c) / 2.0
        yield DfSplit((c, 0.0, 0.0, 1.0 - c), (c, 0.0, 0.0, 1.0 - c))
        yield DfSplit((c, r, 0.0, r), (c, 0.0, r, r))
    for k in range(config.multistarts):
        rng = _rng(config, 1000 + k)
        yield DfSplit(tuple(rng.dirichlet(np.ones(4))), tuple(rng.dirichlet(np.ones(4))))


def _df_refine(topo_at: Topology, triple: SourceTriple, split: DfSplit,
               config: SearchConfig) -> tuple[DfSplit, ConstraintReport]:
    blocks = [list(split.alpha), list(split.beta)]
    report = df_constraints(topo_at, triple, split)
    best = _score(report)
    step = 0.25
    for _ in range(config.refine_iterations):
        improved = False
        for blk in range(2):
            for i in range(4):
                if blocks[blk][i] <= 1e-15:
                    continue
                delta = min(step, blocks[blk][i])
                for j in range(4):
                    if i == j:
                        continue
                    trial = [blocks[0][:], blocks[1][:]]
                    trial[blk][i] -= delta
                    trial[blk][j] += delta
                    cand = DfSplit(tuple(trial[0]), tuple(trial[1]))
                    cand_report = df_constraints(topo_at, triple, cand)
                    cand_score = _score(cand_report)
                    if cand_score > best:
                        best, report, blocks = cand_score, cand_report, trial
                        improved = True
                        if best > 0.0:
                            return DfSplit(tuple(blocks[0]), tuple(blocks[1])), report
        if not improved:
            step /= 2.0
            if step < 1e-3:
                break
    return DfSplit(tuple(blocks[0]), tuple(blocks[1])), report


def _search_df(topo_at, triple, powers, config, extra):
    best_split, best_report, best = None, None, -math.inf
    for split in list(extra) + list(_df_candidates(config)):
        report = df_constraints(topo_at, triple, split)
        if report.feasible:
            return StrategyPoint("df", powers, df_split=split), report
        s = _score(report)
        if s > best:
            best_split, best_report, best = split, report, s
    # polish only when the best candidate is within striking distance
    if best_split is not None and best > -0.5 and config.refine_iterations:
        best_split, best_report = _df_refine(topo_at, triple, best_split, config)
        if best_report.feasible:
            return StrategyPoint("df", powers, df_split=best_split), best_report
    if best_split is None:
        return None, None
    return StrategyPoint("df", powers, df_split=best_split), best_report


# ---------------------------------------------------------------------------
# compress-forward search
# ---------------------------------------------------------------------------

_CF_FRACTIONS = (0.01, 0.03, 0.08, 0.15, 0.3, 0.5, 0.7, 0.85)


def _cf_candidates(config: SearchConfig):
    for f in _CF_FRACTIONS:
        yield (f, f)
    coarse = (0.05, 0.3, 0.7)
    for f1 in coarse:
        for f2 in coarse:
            if f1 != f2:
                yield (f1, f2)
    for k in range(max(1, config.multistarts // 2)):
        rng = _rng(config, 2000 + k)
        yield tuple(rng.uniform(0.005, 0.95, size=2))


def _cf_point(topo_at, triple, powers, fractions, tol):
    p1, p2 = powers
    f1, f2 = fractions
    pu1, pu2 = f1 * p1, f2 * p2
    nt = cf_min_noise(topo_at, pu1, p1 - pu1, pu2, p2 - pu2, tol)
    if nt is None:
        return None, None
    split = CfSplit(pu1, p1 - pu1, pu2, p2 - pu2, nt, nt)
    return split, cf_constraints(topo_at, triple, split)


def _search_cf(topo_at, triple, powers, config, extra):
    tol = min(1e-4, config.bisection_tol)
    best_point, best_report, best = None, None, -math.inf
    for fractions in list(extra) + list(_cf_candidates(config)):
        split, report = _cf_point(topo_at, triple, powers, fractions, tol)
        if report is None:
            continue
        point = StrategyPoint("cf", powers, cf_split=split)
        if report.feasible:
            return point, report
        s = _score(report)
        if s > best:
            best_point, best_report, best = point, report, s
    return best_point, best_report


# ---------------------------------------------------------------------------
# half-duplex time-share search
# ---------------------------------------------------------------------------

def _tdma_mixture(powers, weights, solo_energy, coop_splits) -> TimeShareMixture:
    """Assemble a three-phase mixture from energy fractions of the budget."""
    p1, p2 = powers
    (w0, w1, w2), (e1, e2) = weights, solo_energy
    s1, s2 = coop_splits
    p1_solo = e1 * p1 / w0 if w0 > 0.0 else 0.0
    p2_solo = e2 * p2 / w1 if w1 > 0.0 else 0.0
    p1_coop = (1.0 - e1) * p1 / w2 if w2 > 0.0 else 0.0
    p2_coop = (1.0 - e2) * p2 / w2 if w2 > 0.0 else 0.0
    solo = DfSplit((0.0, 0.0, 0.0, 1.0), (0.0, 0.0, 0.0, 1.0))
    coop = DfSplit((s1[0], s1[1], s1[2], 0.0), (s2[0], s2[1], s2[2], 0.0))
    return TimeShareMixture((
        (w0, StrategyPoint("df", (p1_solo, 0.0), df_split=solo)),
        (w1, StrategyPoint("df", (0.0, p2_solo), df_split=solo)),
        (w2, StrategyPoint("df", (p1_coop, p2_coop), df_split=coop)),
    ))


def _tdma_candidates(config: SearchConfig):
    weight_list = ((1 / 3, 1 / 3, 1 / 3), (0.25, 0.25, 0.5), (0.15, 0.15, 0.7),
                   (0.05, 0.05, 0.9), (0.4, 0.4, 0.2))
    coop_list = ((1.0, 0.0, 0.0), (0.5, 0.25, 0.25), (1 / 3, 1 / 3, 1 / 3))
    for weights in weight_list:
        for e in (0.2, 0.5, 0.8):
            for coop in coop_list:
                yield weights, (e, e), (coop, coop)
    for k in range(config.multistarts):
        rng = _rng(config, 3000 + k)
        weights = tuple(0.05 + 0.85 * rng.dirichlet(np.ones(3)))
        weights = tuple(w / sum(weights) for w in weights)
        e = tuple(rng.uniform(0.1, 0.9, size=2))
        coop = (tuple(rng.dirichlet(np.ones(3))), tuple(rng.dirichlet(np.ones(3))))
        yield weights, e, coop


def _search_tdma(topology, triple, powers, config, extra, full_decode: bool):
    topo_at = topology.with_power_limits(powers)
    best_point, best_report, best = None, None, -math.inf
    for weights, e, coop in list(extra) + list(_tdma_candidates(config)):
        mixture = _tdma_mixture(powers, weights, e, coop)
        report = tdma_df_constraints(topo_at, triple, mixture, full_decode)
        point = StrategyPoint("tdma_df", powers, mixture=mixture)
        if report.feasible:
            return point, report
        s = _score(report)
        if s > best:
            best_point, best_report, best = point, report, s
    return best_point, best_report


# ---------------------------------------------------------------------------
# public feasibility search
# ---------------------------------------------------------------------------

def _search_best(strategy, topology, triple, powers, config, extra=(),
                 tdma_full_decode=True):
    powers = tuple(float(p) for p in powers)
    if any(p < 0.0 for p in powers):
        raise ValueError("operating powers must be nonnegative")
    topo_at = topology.with_power_limits(powers)
    if strategy == "maccc":
        report = maccc_constraints(topo_at, triple, *powers)
        return StrategyPoint("maccc", powers), report
    if strategy == "df":
        return _search_df(topo_at, triple, powers, config, extra)
    if strategy == "cf":
        return _search_cf(topo_at, triple, powers, config, extra)
    if strategy == "tdma_df":
        return _search_tdma(topology, triple, powers, config, extra, tdma_full_decode)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def feasible_split(strategy: str, topology: Topology, triple: SourceTriple,
                   powers, config: SearchConfig | None = None, *,
                   tdma_full_decode: bool = True) -> StrategyPoint | None:
    """Search for any parameter point satisfying the strategy's constraints.

    Returns a witness point, or None when the budgeted search found
    nothing (a failure to find, not a proof of infeasibility).
    """
    config = config or SearchConfig()
    point, report = _search_best(strategy, topology, triple, powers, config,
                                 tdma_full_decode=tdma_full_decode)
    if report is not None and report.feasible:
        return point
    return None


def _warm_candidates(strategy, witness: StrategyPoint | None):
    """Re-express a witness as scale-free candidates for the next power level."""
    if witness is None:
        return ()
    if strategy == "df" and witness.df_split is not None:
        return (witness.df_split,)
    if strategy == "cf" and witness.cf_split is not None:
        p1, p2 = witness.powers
        if p1 > 0.0 and p2 > 0.0:
            return ((witness.cf_split.pu1 / p1, witness.cf_split.pu2 / p2),)
    if strategy == "tdma_df" and witness.mixture is not None:
        comps = witness.mixture.components
        weights = tuple(w for w, _ in comps)
        p1, p2 = witness.powers
        e1 = comps[0][0] * comps[0][1].powers[0] / p1 if p1 > 0.0 else 0.5
        e2 = comps[1][0] * comps[1][1].powers[1] / p2 if p2 > 0.0 else 0.5
        coop = (comps[2][1].df_split.alpha[:3], comps[2][1].df_split.beta[:3])
        return ((weights, (e1, e2), coop),)
    return ()


def min_power(strategy: str, topology: Topology, triple: SourceTriple,
              objective: str = "symmetric", config: SearchConfig | None = None,
              *, tdma_full_decode: bool = True) -> MinPowerResult:
    """Smallest transmit power at which a feasible parameter point was found.

    Bisects the power scale with the feasibility search as inner oracle,
    warm-starting each level from the last witness.  Feasibility is
    treated as monotone in power; because that is heuristic for
    compress-forward, a sweep of eight levels below the result double
    checks for lower feasible points and the search descends again if
    any turn up.  ``CapExceeded`` is raised when even ``power_cap`` is
    infeasible.
    """
    config = config or SearchConfig()
    if objective not in ("symmetric", "sum"):
        raise ValueError("objective must be 'symmetric' or 'sum'")
    ratios = [0.5] + [r for r in np.linspace(0.1, 0.9, config.grid_resolution)
                      if abs(r - 0.5) > 1e-12]
    warm: dict = {"candidates": (), "ratio": None}

    def probe(scale: float):
        if objective == "symmetric":
            powers_list = [(scale, scale)]
        else:
            order = [warm["ratio"]] if warm["ratio"] is not None else []
            order += [r for r in ratios if r != warm["ratio"]]
            powers_list = [(scale * r, scale * (1.0 - r)) for r in order]
        for powers in powers_list:
            point, report = _search_best(strategy, topology, triple, powers,
                                         config, extra=warm["candidates"],
                                         tdma_full_decode=tdma_full_decode)
            if report is not None and report.feasible:
                warm["candidates"] = _warm_candidates(strategy, point)
                if objective == "sum" and scale > 0.0:
                    warm["ratio"] = powers[0] / scale
                return point
        return None

    zero = probe(0.0)
    if zero is not None:
        return MinPowerResult(0.0, zero, objective)
    witness = probe(config.power_cap)
    if witness is None:
        raise CapExceeded(
            f"{strategy} infeasible for this source at power_cap={config.power_cap}")

    lo, hi = 0.0, config.power_cap
    suspects: list[float] = []
    for _ in range(4):
        while hi - lo > config.bisection_tol:
            mid = 0.5 * (lo + hi)
            point = probe(mid)
            if point is not None:
                hi, witness = mid, point
            else:
                lo = mid
        lower = [hi * k / 9.0 for k in range(1, 9)]
        found = None
        for level in lower:
            point = probe(level)
            if point is not None:
                found = (level, point)
                break
        if found is None:
            break
        suspects.append(found[0])
        lo, hi, witness = 0.0, found[0], found[1]
    return MinPowerResult(hi, witness, objective, monotone=not suspects,
                          suspect_levels=tuple(suspects))


# ---------------------------------------------------------------------------
# scenario sweeps
# ---------------------------------------------------------------------------

def _with_distances(topology: Topology, d12: float, d13: float, d23: float) -> Topology:
    d = np.array([[0.0, d12, d13], [d12, 0.0, d23], [d13, d23, 0.0]])
    return replace(topology, distances=d)


def _point_detail(point: StrategyPoint | None) -> dict | None:
    if point is None:
        return None
    from dataclasses import asdict

    return asdict(point)


def sweep(strategies, topology: Topology, parameter: str, values, triple: SourceTriple,
          config: SearchConfig | None = None, objective: str = "symmetric") -> list[SweepRow]:
    """Tabulate each strategy's result as one scenario parameter varies.

    ``d12`` moves the inter-source distance, ``d13_d23`` both
    source-destination distances, ``common`` the shared-information
    entropy; these report the minimum power per strategy.
    ``pu_fraction`` is compress-forward specific: the value is the power
    placed on each compression carrier (out of the node's budget) and
    the reported figure is the smallest feasible quantization noise.
    """
    config = config or SearchConfig()
    if isinstance(strategies, str):
        strategies = (strategies,)
    rows: list[SweepRow] = []
    for value in values:
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("swept values must be finite")
        for strategy in strategies:
            if parameter == "pu_fraction":
                if strategy != "cf":
                    raise ValueError("pu_fraction sweeps apply to the cf strategy")
                rows.append(_cf_noise_row(topology, triple, value, config))
                continue
            if parameter == "d12":
                topo = _with_distances(topology, value, topology.distances[0, 2],
                                       topology.distances[1, 2])
            elif parameter == "d13_d23":
                topo = _with_distances(topology, topology.distances[0, 1], value, value)
            elif parameter == "common":
                topo = topology
            else:
                raise ValueError(f"unknown swept parameter {parameter!r}")
            swept_triple = (replace(triple, common=value)
                            if parameter == "common" else triple)
            try:
                result = min_power(strategy, topo, swept_triple, objective, config)
                rows.append(SweepRow(value, strategy, result.p_star,
                                     _point_detail(result.witness)))
            except CapExceeded:
                rows.append(SweepRow(value, strategy, math.inf, None))
    return rows


def _cf_noise_row(topology, triple, pu, config) -> SweepRow:
    p1, p2 = topology.power_limits
    if pu < 0.0 or pu > min(p1, p2):
        raise ValueError("pu must lie within both node power budgets")
    nt = cf_min_noise(topology, pu, p1 - pu, pu, p2 - pu, min(1e-4, config.bisection_tol))
    if nt is None:
        return SweepRow(pu, "cf", math.inf, None)
    split = CfSplit(pu, p1 - pu, pu, p2 - pu, nt, nt)
    report = cf_constraints(topology, triple, split)
    detail = {
        "ntilde": nt,
        "rate_r1": report.entry("CF-R1").rhs_bits,
        "rate_r2": report.entry("CF-R2").rhs_bits,
        "rate_sum": report.entry("CF-R12").rhs_bits,
        "pu": pu,
        "pv": (p1 - pu, p2 - pu),
    }
    return SweepRow(pu, "cf", nt, detail)


# ---------------------------------------------------------------------------
# rate regions and time sharing
# ---------------------------------------------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def upper_right_hull(points) -> list[tuple[float, float]]:
    """Concave frontier of the point cloud closed with the axis anchors.

    This is the time-sharing operation: every convex combination of
    achievable points is achievable, so the frontier runs from
    (0, ymax) down to (xmax, 0) and dominates every raw point.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if not pts:
        return []
    xmax = max(x for x, _ in pts)
    ymax = max(y for _, y in pts)
    pts += [(0.0, ymax), (xmax, 0.0)]
    by_x: dict[float, float] = {}
    for x, y in pts:
        by_x[x] = max(by_x.get(x, -math.inf), y)
    seq = sorted(by_x.items())
    hull: list[tuple[float, float]] = []
    for p in seq:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0.0:
            hull.pop()
        hull.append(p)
    return hull


def hull_height(hull, x: float) -> float:
    """Frontier height at abscissa x (piecewise linear, -inf outside)."""
    if not hull:
        return -math.inf
    if x < hull[0][0] or x > hull[-1][0]:
        return -math.inf
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= x <= x1:
            if x1 == x0:
                return max(y0, y1)
            t = (x - x0) / (x1 - x0)
            return y0 + t * (y1 - y0)
    return hull[-1][1]


def _pentagon(i1: float, i2: float, i12: float) -> list[tuple[float, float]]:
    s = min(i12, i1 + i2)
    x1 = min(i1, s)
    y1 = min(i2, s - x1)
    y2 = min(i2, s)
    x2 = min(i1, s - y2)
    pts = {(0.0, 0.0), (x1, 0.0), (x1, y1), (x2, y2), (0.0, y2)}
    return sorted(pts)


_ZERO_TRIPLE = SourceTriple(0.0, 0.0, 0.0)


def _df_region_splits(resolution, config):
    for c in np.linspace(0.0, 1.0, resolution):
        r = (1.0 - c) / 2.0
        yield DfSplit((c, 0.0, 0.0, 1.0 - c), (c, 0.0, 0.0, 1.0 - c))
        yield DfSplit((c, r, 0.0, r), (c, 0.0, r, r))
    for k in range(config.multistarts):
        rng = _rng(config, 4000 + k)
        yield DfSplit(tuple(rng.dirichlet(np.ones(4))), tuple(rng.dirichlet(np.ones(4))))


def region(strategy: str, topology: Topology, powers, resolution: int,
           config: SearchConfig | None = None) -> RegionResult:
    """Achievable (r1, r2) corner points and their time-sharing hull.

    Rates are the per-source quantities deliverable to the destination,
    to be intersected with the distributed source-coding constraints
    afterwards; the decode-forward cloud uses the no-common-part
    coordinates.  The hull dominates every raw point by construction.
    """
    config = config or SearchConfig()
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    powers = tuple(float(p) for p in powers)
    topo_at = topology.with_power_limits(powers)
    points: list[RegionPoint] = []
    seen: set[tuple[float, float]] = set()

    def add(r1, r2, params):
        key = (r1, r2)
        if key not in seen:
            seen.add(key)
            points.append(RegionPoint(r1, r2, strategy, params))

    if strategy == "maccc":
        report = maccc_constraints(topo_at, _ZERO_TRIPLE, *powers)
        i1 = report.entry("MAC-1").rhs_bits
        i2 = report.entry("MAC-2").rhs_bits
        i12 = report.entry("MAC-3").rhs_bits
        params = StrategyPoint("maccc", powers)
        for r1, r2 in _pentagon(i1, i2, i12):
            add(r1, r2, params)
    elif strategy == "df":
        for split in _df_region_splits(resolution, config):
            report = df_constraints(topo_at, _ZERO_TRIPLE, split)
            i1 = min(report.entry(k).rhs_bits for k in ("DF-2a", "DF-2b", "DF-5"))
            i2 = min(report.entry(k).rhs_bits for k in ("DF-3a", "DF-3b", "DF-6"))
            i12 = min(report.entry(k).rhs_bits for k in ("DF-1", "DF-7"))
            params = StrategyPoint("df", powers, df_split=split)
            for r1, r2 in _pentagon(i1, i2, i12):
                add(r1, r2, params)
    elif strategy == "cf":
        tol = min(1e-4, config.bisection_tol)
        fracs = [0.01] + list(np.linspace(0.1, 0.9, resolution - 1))
        for f1 in fracs:
            for f2 in fracs:
                split, report = _cf_point(topo_at, _ZERO_TRIPLE, powers, (f1, f2), tol)
                if report is None:
                    continue
                i1 = report.entry("CF-R1").rhs_bits
                i2 = report.entry("CF-R2").rhs_bits
                i12 = report.entry("CF-R12").rhs_bits
                params = StrategyPoint("cf", powers, cf_split=split)
                for r1, r2 in _pentagon(i1, i2, i12):
                    add(r1, r2, params)
    else:
        raise ValueError(
            "region supports df, cf and maccc; time sharing is the hull itself")

    hull = tuple(upper_right_hull([(p.r1, p.r2) for p in points]))
    return RegionResult(tuple(points), hull)
