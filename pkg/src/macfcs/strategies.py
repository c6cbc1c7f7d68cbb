"""Signal models and per-inequality evaluation for the coding strategies.

Four strategies are covered for the three-node channel (sources 1 and 2,
destination 3):

* decode-forward (``df``): each source decodes the other's fresh private
  message from the feedback link, then both ride shared auxiliary
  signals W0/W1/W2 coherently while superposing fresh private signals;
* compress-forward (``cf``): each source quantizes its overheard signal
  (test channel adds noise of variance ``ntilde``), compresses it onto a
  carrier U, and superposes it with its new-information carrier V;
* MAC channel coding (``maccc``): independent inputs, feedback ignored,
  source coding separated out;
* half-duplex time sharing (``tdma_df``): three phases, node 1 alone,
  node 2 alone, then deterministic coherent transmission from both.

Every evaluator returns a ``ConstraintReport`` listing each inequality
with its entropy left side, mutual-information right side, and slack.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BadPhaseStructure,
    InvalidTolerance,
    NonpositiveCompressionNoise,
    SplitOutOfBudget,
)
from .gaussian import GaussianSystem, SystemBuilder, mutual_info
from .model import SourceTriple, Topology

_BUDGET_TOL = 1e-12

#: search ceiling for compression-noise variance
NOISE_CAP = 1e12

#: search floor for compression-noise variance
NOISE_FLOOR = 1e-9


def _amp(power: float) -> float:
    # guards tiny negative products from float arithmetic at split boundaries
    return math.sqrt(max(0.0, power))


def _check_three_node(topology: Topology) -> None:
    if topology.node_count != 3:
        raise ValueError("strategy evaluators are defined for the three-node channel")


# ---------------------------------------------------------------------------
# strategy parameter types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DfSplit:
    """Decode-forward power fractions per node.

    ``alpha`` gives node 1's fractions on (W0, W1, W2, fresh private) and
    ``beta`` node 2's, each summing to at most 1.
    """

    alpha: tuple[float, float, float, float]
    beta: tuple[float, float, float, float]

    def __post_init__(self):
        alpha = tuple(float(a) for a in self.alpha)
        beta = tuple(float(b) for b in self.beta)
        for label, frac in (("alpha", alpha), ("beta", beta)):
            if len(frac) != 4:
                raise SplitOutOfBudget(f"{label} must have four components")
            if any(f < 0.0 or not math.isfinite(f) for f in frac):
                raise SplitOutOfBudget(f"{label} components must be nonnegative")
            if sum(frac) > 1.0 + _BUDGET_TOL:
                raise SplitOutOfBudget(f"{label} fractions sum to {sum(frac)} > 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class CfSplit:
    """Compress-forward powers and quantization noises per node.

    ``pu_i`` rides the compressed-old-information carrier, ``pv_i`` the
    new-information carrier; ``ntilde_i`` is the quantization test-channel
    noise variance (strictly positive).
    """

    pu1: float
    pv1: float
    pu2: float
    pv2: float
    ntilde1: float
    ntilde2: float

    def __post_init__(self):
        for field in ("pu1", "pv1", "pu2", "pv2"):
            v = float(getattr(self, field))
            if v < 0.0 or not math.isfinite(v):
                raise SplitOutOfBudget(f"{field} must be a nonnegative power")
            object.__setattr__(self, field, v)
        for field in ("ntilde1", "ntilde2"):
            v = float(getattr(self, field))
            if not (v > 0.0):
                raise NonpositiveCompressionNoise(f"{field} must be strictly positive")
            object.__setattr__(self, field, v)


@dataclass(frozen=True)
class StrategyPoint:
    """A strategy identifier with its operating powers and free parameters."""

    strategy: str
    powers: tuple[float, float]
    df_split: DfSplit | None = None
    cf_split: CfSplit | None = None
    mixture: "TimeShareMixture | None" = None

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(float(p) for p in self.powers))


@dataclass(frozen=True)
class TimeShareMixture:
    """Weighted phases, each a strategy point; weights sum to one."""

    components: tuple[tuple[float, StrategyPoint], ...]

    def __post_init__(self):
        comps = tuple((float(w), point) for w, point in self.components)
        if any(w < -_BUDGET_TOL for w, _ in comps):
            raise BadPhaseStructure("phase weights must be nonnegative")
        total = sum(w for w, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise BadPhaseStructure(f"phase weights sum to {total}, expected 1")
        object.__setattr__(self, "components", comps)

    def average_powers(self) -> tuple[float, float]:
        p1 = sum(w * point.powers[0] for w, point in self.components)
        p2 = sum(w * point.powers[1] for w, point in self.components)
        return (p1, p2)


# ---------------------------------------------------------------------------
# constraint reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintEntry:
    """One inequality: entropy left side vs mutual-information right side."""

    label: str
    lhs_bits: float
    rhs_bits: float
    strict: bool = True

    @property
    def slack_bits(self) -> float:
        return self.rhs_bits - self.lhs_bits

    @property
    def satisfied(self) -> bool:
        # a vanished left side means nothing needs to be carried, so the
        # strict inequality is vacuous at the 0 < 0 boundary
        if not self.strict:
            return self.slack_bits >= 0.0
        return self.slack_bits > 0.0 or (self.lhs_bits <= 0.0 and self.slack_bits >= 0.0)


@dataclass(frozen=True)
class ConstraintReport:
    """Evaluation of one strategy point against its full inequality set."""

    entries: tuple[ConstraintEntry, ...]

    @property
    def feasible(self) -> bool:
        return all(e.satisfied for e in self.entries)

    @property
    def min_slack(self) -> float:
        return min((e.slack_bits for e in self.entries), default=math.inf)

    def entry(self, label: str) -> ConstraintEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def rows(self) -> list[dict]:
        return [
            {
                "label": e.label,
                "lhs_bits": e.lhs_bits,
                "rhs_bits": e.rhs_bits,
                "slack_bits": e.slack_bits,
                "feasible": e.satisfied,
            }
            for e in self.entries
        ]


# ---------------------------------------------------------------------------
# decode-forward
# ---------------------------------------------------------------------------

def df_build(topology: Topology, split: DfSplit) -> GaussianSystem:
    """Gaussian signal model for decode-forward.

    Both nodes scale the shared unit auxiliaries W0/W1/W2 (coherent
    combining) and add an independent fresh private signal; receivers at
    the source nodes see the other source only (own echo cancelled).
    """
    _check_three_node(topology)
    p1, p2 = topology.power_limits
    a0, a1, a2, av = split.alpha
    b0, b1, b2, bv = split.beta

    g12 = math.sqrt(topology.gain(0, 1))
    g13 = math.sqrt(topology.gain(0, 2))
    g23 = math.sqrt(topology.gain(1, 2))
    n1, n2, n3 = topology.noise

    sb = SystemBuilder()
    sb.variable("W0", {"w0": 1.0})
    sb.variable("W1", {"w1": 1.0})
    sb.variable("W2", {"w2": 1.0})
    sb.variable("X1", {"w0": _amp(a0 * p1), "w1": _amp(a1 * p1),
                       "w2": _amp(a2 * p1), "v1": _amp(av * p1)})
    sb.variable("X2", {"w0": _amp(b0 * p2), "w1": _amp(b1 * p2),
                       "w2": _amp(b2 * p2), "v2": _amp(bv * p2)})
    sb.mix("Y1", {"X2": g12}, {"z1": _amp(n1)})
    sb.mix("Y2", {"X1": g12}, {"z2": _amp(n2)})
    sb.mix("Y3", {"X1": g13, "X2": g23}, {"z3": _amp(n3)})
    return sb.build()


_W = ("W0", "W1", "W2")

# (label, lhs attribute of the source triple, MI terms to sum)
_DF_CONSTRAINTS = (
    ("DF-1", "joint", ((("X1", "X2"), ("Y3",), ()),)),
    ("DF-2a", "h1_given_2", ((("X1",), ("Y2",), _W + ("X2",)),)),
    ("DF-2b", "h1_given_2", ((("W1",), ("Y3",), ("W0", "W2")),
                             (("X1",), ("Y3",), _W + ("X2",)))),
    ("DF-3a", "h2_given_1", ((("X2",), ("Y1",), _W + ("X1",)),)),
    ("DF-3b", "h2_given_1", ((("W2",), ("Y3",), ("W0", "W1")),
                             (("X2",), ("Y3",), _W + ("X1",)))),
    ("DF-4", "common", ((("W0",), ("Y3",), ("W1", "W2")),)),
    ("DF-5", "h1", ((("W0", "W1"), ("Y3",), ("W2",)),
                    (("X1",), ("Y3",), _W + ("X2",)))),
    ("DF-6", "h2", ((("W0", "W2"), ("Y3",), ("W1",)),
                    (("X2",), ("Y3",), _W + ("X1",)))),
    ("DF-7", "private_sum", ((("W1", "W2"), ("Y3",), ("W0",)),
                             (("X1", "X2"), ("Y3",), _W))),
)


def _triple_lhs(triple: SourceTriple, key: str) -> float:
    if key == "private_sum":
        return triple.h1_given_2 + triple.h2_given_1
    return getattr(triple, key)


def df_constraints(topology: Topology, triple: SourceTriple,
                   split: DfSplit) -> ConstraintReport:
    """Evaluate every decode-forward inequality at one power split.

    The two-branch minimum constraints report each branch separately
    (suffixes ``a`` for the inter-source decoding branch, ``b`` for the
    two-block destination branch); all inequalities are strict.
    """
    system = df_build(topology, split)
    entries = []
    for label, lhs_key, terms in _DF_CONSTRAINTS:
        rhs = sum(mutual_info(system, a, b, c) for a, b, c in terms)
        entries.append(ConstraintEntry(label, _triple_lhs(triple, lhs_key), rhs))
    return ConstraintReport(tuple(entries))


# ---------------------------------------------------------------------------
# compress-forward
# ---------------------------------------------------------------------------

def cf_build(topology: Topology, split: CfSplit) -> GaussianSystem:
    """Gaussian signal model for compress-forward.

    Each node superposes the compression carrier U and the fresh carrier
    V; its quantized observation adds the test-channel noise on top of
    the echo-cancelled received signal.
    """
    _check_three_node(topology)
    p1, p2 = topology.power_limits
    if split.pu1 + split.pv1 > p1 + _BUDGET_TOL:
        raise SplitOutOfBudget(f"pu1 + pv1 = {split.pu1 + split.pv1} exceeds P1 = {p1}")
    if split.pu2 + split.pv2 > p2 + _BUDGET_TOL:
        raise SplitOutOfBudget(f"pu2 + pv2 = {split.pu2 + split.pv2} exceeds P2 = {p2}")

    g12 = math.sqrt(topology.gain(0, 1))
    g13 = math.sqrt(topology.gain(0, 2))
    g23 = math.sqrt(topology.gain(1, 2))
    n1, n2, n3 = topology.noise

    sb = SystemBuilder()
    sb.variable("U1", {"u1": 1.0})
    sb.variable("U2", {"u2": 1.0})
    sb.variable("X1", {"u1": _amp(split.pu1), "v1": _amp(split.pv1)})
    sb.variable("X2", {"u2": _amp(split.pu2), "v2": _amp(split.pv2)})
    sb.mix("Y1", {"X2": g12}, {"z1": _amp(n1)})
    sb.mix("Y2", {"X1": g12}, {"z2": _amp(n2)})
    sb.mix("Y3", {"X1": g13, "X2": g23}, {"z3": _amp(n3)})
    sb.mix("Yt1", {"Y1": 1.0}, {"q1": _amp(split.ntilde1)})
    sb.mix("Yt2", {"Y2": 1.0}, {"q2": _amp(split.ntilde2)})
    return sb.build()


def _cf_feasibility_entries(system: GaussianSystem) -> tuple[ConstraintEntry, ...]:
    # cost of describing each quantized observation, minus what the
    # destination recovers from side information, must fit under the
    # carriers' decoding capacity
    cost1 = mutual_info(system, "Yt1", "Y1", ("X1", "U1"))
    cost2 = mutual_info(system, "Yt2", "Y2", ("X2", "U2"))
    side1 = mutual_info(system, "Yt1", "Y3", ("Yt2", "U1", "U2"))
    side2 = mutual_info(system, "Yt2", "Y3", ("Yt1", "U1", "U2"))
    side12 = mutual_info(system, ("Yt1", "Yt2"), "Y3", ("U1", "U2"))
    cap1 = mutual_info(system, "U1", "Y3", ("U2",))
    cap2 = mutual_info(system, "U2", "Y3", ("U1",))
    cap12 = mutual_info(system, ("U1", "U2"), "Y3")
    return (
        ConstraintEntry("CF-F1", cost1 - side1, cap1),
        ConstraintEntry("CF-F2", cost2 - side2, cap2),
        ConstraintEntry("CF-F3", cost1 + cost2 - side12, cap12),
    )


def cf_constraints(topology: Topology, triple: SourceTriple,
                   split: CfSplit) -> ConstraintReport:
    """Evaluate the compress-forward rate and compression-feasibility set.

    ``CF-R*`` are the post-source-coding rate constraints; ``CF-F*``
    bound the compression cost by the carriers' decoding capacity.  All
    six inequalities are strict.
    """
    system = cf_build(topology, split)
    obs = ("Yt1", "Yt2", "Y3")
    entries = (
        ConstraintEntry("CF-R1", triple.h1_given_2,
                        mutual_info(system, "X1", obs, ("U1", "U2", "X2"))),
        ConstraintEntry("CF-R2", triple.h2_given_1,
                        mutual_info(system, "X2", obs, ("U1", "U2", "X1"))),
        ConstraintEntry("CF-R12", triple.joint,
                        mutual_info(system, ("X1", "X2"), obs, ("U1", "U2"))),
    ) + _cf_feasibility_entries(system)
    return ConstraintReport(entries)


def _cf_noise_feasible(topology: Topology, pu1: float, pv1: float,
                       pu2: float, pv2: float, ntilde: float) -> bool:
    split = CfSplit(pu1, pv1, pu2, pv2, ntilde, ntilde)
    system = cf_build(topology, split)
    return all(e.satisfied for e in _cf_feasibility_entries(system))


def cf_min_noise(topology: Topology, pu1: float, pv1: float, pu2: float,
                 pv2: float, tol: float = 1e-6, *, floor: float = NOISE_FLOOR,
                 cap: float = NOISE_CAP) -> float | None:
    """Smallest symmetric quantization noise meeting the CF-F constraints.

    Bisects the common ``ntilde1 = ntilde2`` value down to ``tol``;
    returns None when even ``cap`` is infeasible (for example with no
    power on the compression carriers, where the required noise diverges).
    Coarser quantization only relaxes the constraints, so feasibility is
    treated as monotone in the noise.
    """
    if not (tol > 0.0 and math.isfinite(tol)):
        raise InvalidTolerance("tol must be strictly positive")
    if not _cf_noise_feasible(topology, pu1, pv1, pu2, pv2, cap):
        return None
    if _cf_noise_feasible(topology, pu1, pv1, pu2, pv2, floor):
        return floor
    lo, hi = floor, cap
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _cf_noise_feasible(topology, pu1, pv1, pu2, pv2, mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# separate source/MAC coding
# ---------------------------------------------------------------------------

def maccc_constraints(topology: Topology, triple: SourceTriple,
                      p1: float, p2: float) -> ConstraintReport:
    """MAC channel coding with independent inputs and no feedback use.

    The three inequalities are non-strict: private entropies under the
    single-user informations, joint entropy under the sum information.
    """
    _check_three_node(topology)
    lim1, lim2 = topology.power_limits
    if not (0.0 <= p1 <= lim1 + _BUDGET_TOL and 0.0 <= p2 <= lim2 + _BUDGET_TOL):
        raise ValueError("operating powers must lie within the node power limits")

    g13 = math.sqrt(topology.gain(0, 2))
    g23 = math.sqrt(topology.gain(1, 2))
    sb = SystemBuilder()
    sb.variable("X1", {"v1": _amp(p1)})
    sb.variable("X2", {"v2": _amp(p2)})
    sb.mix("Y3", {"X1": g13, "X2": g23}, {"z3": _amp(topology.noise[2])})
    system = sb.build()

    entries = (
        ConstraintEntry("MAC-1", triple.h1_given_2,
                        mutual_info(system, "X1", "Y3", ("X2",)), strict=False),
        ConstraintEntry("MAC-2", triple.h2_given_1,
                        mutual_info(system, "X2", "Y3", ("X1",)), strict=False),
        ConstraintEntry("MAC-3", triple.joint,
                        mutual_info(system, ("X1", "X2"), "Y3"), strict=False),
    )
    return ConstraintReport(entries)


# ---------------------------------------------------------------------------
# half-duplex time sharing
# ---------------------------------------------------------------------------

def _check_phase_structure(mixture: TimeShareMixture) -> None:
    if len(mixture.components) != 3:
        raise BadPhaseStructure("expected exactly three phases: node 1 solo, "
                                "node 2 solo, coherent joint transmission")
    for q, (_, point) in enumerate(mixture.components):
        if point.df_split is None:
            raise BadPhaseStructure(f"phase {q} needs a decode-forward split")
        alpha, beta = point.df_split.alpha, point.df_split.beta
        p1, p2 = point.powers
        if q == 0:
            if p2 > _BUDGET_TOL:
                raise BadPhaseStructure("phase 0 is node 1 only; node 2 must be silent")
            if any(f > _BUDGET_TOL for f in alpha[:3]):
                raise BadPhaseStructure("phase 0 carries fresh information only, "
                                        "no auxiliary components")
        elif q == 1:
            if p1 > _BUDGET_TOL:
                raise BadPhaseStructure("phase 1 is node 2 only; node 1 must be silent")
            if any(f > _BUDGET_TOL for f in beta[:3]):
                raise BadPhaseStructure("phase 1 carries fresh information only, "
                                        "no auxiliary components")
        else:
            if alpha[3] > _BUDGET_TOL or beta[3] > _BUDGET_TOL:
                raise BadPhaseStructure("phase 2 transmissions must be fully "
                                        "determined by the auxiliaries")


def tdma_df_constraints(topology: Topology, triple: SourceTriple,
                        mixture: TimeShareMixture,
                        destination_decodes_all_phases: bool = True) -> ConstraintReport:
    """Decode-forward inequality set for the three-phase half-duplex scheme.

    Every mutual-information term is the weight-averaged per-phase value.
    With ``destination_decodes_all_phases`` False the destination only
    listens during the joint phase, so its terms from the two solo phases
    are dropped (the classical half-duplex scheme); True keeps them and
    can only enlarge the right sides.
    """
    _check_three_node(topology)
    _check_phase_structure(mixture)
    avg1, avg2 = mixture.average_powers()
    lim1, lim2 = topology.power_limits
    if avg1 > lim1 + 1e-9 or avg2 > lim2 + 1e-9:
        raise SplitOutOfBudget(
            f"average phase powers ({avg1}, {avg2}) exceed limits ({lim1}, {lim2})")

    systems = [
        df_build(topology.with_power_limits(point.powers), point.df_split)
        for _, point in mixture.components
    ]
    entries = []
    for label, lhs_key, terms in _DF_CONSTRAINTS:
        rhs = 0.0
        for q, (weight, _) in enumerate(mixture.components):
            if weight == 0.0:
                continue
            for a, b, c in terms:
                if not destination_decodes_all_phases and q < 2 and "Y3" in b:
                    continue
                rhs += weight * mutual_info(systems[q], a, b, c)
        entries.append(ConstraintEntry(label, _triple_lhs(triple, lhs_key), rhs))
    return ConstraintReport(tuple(entries))
