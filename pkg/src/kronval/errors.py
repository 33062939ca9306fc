"""Exception types shared across the package."""


class KronvalError(Exception):
    """Base class for all kronval errors."""


class ParameterError(KronvalError, ValueError):
    """A model parameter or argument violates its contract."""


class DimensionError(ParameterError):
    """A vertex does not fit the digit count of the model it is used with."""


class CapacityError(KronvalError, RuntimeError):
    """The request exceeds a desk-scale resource cap.

    The message names the cap and, where one exists, a cheaper alternative.
    """


class ConfigError(KronvalError, ValueError):
    """An experiment configuration is invalid (maps to CLI exit code 2)."""
