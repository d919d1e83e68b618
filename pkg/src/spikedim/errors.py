"""Exception types shared across the package."""


class SpikedimError(Exception):
    """Base class for all errors raised by spikedim."""


class NonFiniteInput(SpikedimError):
    """Data contains NaN or infinite entries."""


class TooFewRows(SpikedimError):
    """Fewer than two observations; centering is undefined."""


class KOutOfRange(SpikedimError):
    """Hypothesized dimension k outside [0, p-1]."""


class DegenerateTrailingBlock(SpikedimError):
    """All trailing eigenvalues are zero; the dispersion statistic is undefined."""


class InsufficientDf(SpikedimError):
    """Chi-square reference distribution would have fewer than one degree of freedom."""


class InvalidModel(SpikedimError):
    """Spiked-model parameters violate their constraints."""


class InvalidExponent(SpikedimError):
    """Growth exponents outside the admissible range (alpha >= 0, beta > 0)."""


class ConfigError(SpikedimError):
    """Invalid CLI/config-file input; message names the offending key or line."""
