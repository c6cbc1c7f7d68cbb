"""Achievable-rate strategies for the three-node Gaussian multiple access
channel with feedback and correlated sources: decode-forward at the
sources, compress-forward at the destination, separate source/MAC
coding, half-duplex time sharing, and power-minimization search on top.
"""

from .errors import (
    BadPhaseStructure,
    CapExceeded,
    ConfigError,
    InvalidPMF,
    InvalidTolerance,
    MacfcsError,
    NonpositiveCompressionNoise,
    OverlappingSets,
    SelfLink,
    SingularCovariance,
    SplitOutOfBudget,
    UnknownVariable,
)
from .gaussian import (
    DEGENERATE_VARIANCE,
    GaussianSystem,
    SystemBuilder,
    covariance,
    diff_entropy,
    mutual_info,
)
from .model import (
    JointPMF,
    SlepianWolfCheck,
    SourceTriple,
    Topology,
    slepian_wolf_feasible,
    triple_from_pmf,
)
from .optimize import (
    STRATEGIES,
    MinPowerResult,
    RegionPoint,
    RegionResult,
    SearchConfig,
    SweepRow,
    evaluate_point,
    feasible_split,
    hull_height,
    min_power,
    region,
    sweep,
    upper_right_hull,
)
from .strategies import (
    NOISE_CAP,
    NOISE_FLOOR,
    CfSplit,
    ConstraintEntry,
    ConstraintReport,
    DfSplit,
    StrategyPoint,
    TimeShareMixture,
    cf_build,
    cf_constraints,
    cf_min_noise,
    df_build,
    df_constraints,
    maccc_constraints,
    tdma_df_constraints,
)

__version__ = "0.1.0"

__all__ = [
    "BadPhaseStructure", "CapExceeded", "ConfigError", "InvalidPMF",
    "InvalidTolerance", "MacfcsError", "NonpositiveCompressionNoise",
    "OverlappingSets", "SelfLink", "SingularCovariance", "SplitOutOfBudget",
    "UnknownVariable",
    "DEGENERATE_VARIANCE", "GaussianSystem", "SystemBuilder", "covariance",
    "diff_entropy", "mutual_info",
    "JointPMF", "SlepianWolfCheck", "SourceTriple", "Topology",
    "slepian_wolf_feasible", "triple_from_pmf",
    "NOISE_CAP", "NOISE_FLOOR", "CfSplit", "ConstraintEntry",
    "ConstraintReport", "DfSplit", "StrategyPoint", "TimeShareMixture",
    "cf_build", "cf_constraints", "cf_min_noise", "df_build",
    "df_constraints", "maccc_constraints", "tdma_df_constraints",
    "STRATEGIES", "MinPowerResult", "RegionPoint", "RegionResult",
    "SearchConfig", "SweepRow", "evaluate_point", "feasible_split",
    "hull_height", "min_power", "region", "sweep", "upper_right_hull",
    "__version__",
]
