"""Exception types shared across the package."""


class TwoModeError(Exception):
    """Base class for every error raised by this package."""


class MalformedInputError(TwoModeError, ValueError):
    """Input is structurally invalid (wrong shape, not symmetric, bad schema)."""


class UnphysicalStateError(TwoModeError, ValueError):
    """A covariance matrix violates the two-mode uncertainty principle."""


class DomainError(TwoModeError, ValueError):
    """An argument or parameter set lies outside an operation's domain."""


class NotSymmetricError(DomainError):
    """An operation defined only for symmetric states (a == b) got an asymmetric one."""


class MinimizationError(TwoModeError, RuntimeError):
    """The angle minimizer could not produce a trustworthy result."""


class SamplingError(TwoModeError, RuntimeError):
    """The rejection sampler exceeded its retry budget."""
