"""Exception types shared across the package."""


class MacfcsError(Exception):
    """Base class for all package-specific errors."""


class UnknownVariable(MacfcsError):
    """A queried variable name is not defined in the Gaussian system."""


class OverlappingSets(MacfcsError):
    """Mutual-information argument sets share a variable name."""


class SingularCovariance(MacfcsError):
    """A covariance factorization failed beyond the degenerate-variable pruning rule."""


class InvalidPMF(MacfcsError):
    """A joint probability table has a negative entry or does not sum to one."""


class SelfLink(MacfcsError):
    """A channel gain was requested from a node to itself."""


class SplitOutOfBudget(MacfcsError):
    """A power split is negative or exceeds the available transmit power."""


class NonpositiveCompressionNoise(MacfcsError):
    """A quantization test channel needs strictly positive noise variance."""


class BadPhaseStructure(MacfcsError):
    """A time-share mixture does not match the required phase layout."""


class InvalidTolerance(MacfcsError):
    """A search tolerance must be strictly positive."""


class CapExceeded(MacfcsError):
    """No feasible operating point was found up to the configured power cap."""


class ConfigError(MacfcsError):
    """A run configuration failed to parse or validate."""
