"""
Exception hierarchy shared by every package.

The CLI maps ConfigError to exit code 2 and NumericalError to exit code 3.
"""


class OtmError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(OtmError):
    """A configuration file, preset or override could not be used."""


class InvalidNoiseError(ConfigError):
    """Noise model probabilities outside [0, 1] or unknown preset."""


class NumericalError(OtmError):
    """A numerical precondition or computation failed."""


class NotHermitianError(NumericalError):
    """Matrix is not Hermitian within tolerance."""


class NotUnitaryError(NumericalError):
    """Matrix is not unitary within tolerance."""


class NoConvergenceError(NumericalError):
    """The eigen-solver did not converge."""


class DimensionOverflowError(NumericalError):
    """A tensor product would exceed the configured dimension cap."""


class DimensionMismatchError(NumericalError):
    """Operands have incompatible dimensions."""


class NotPowerOfTwoDimError(NumericalError):
    """Pauli decomposition requested for a dimension that is not 2**n."""


class InvalidBasisError(NumericalError):
    """Initial basis vectors are not orthonormal or have the wrong shape."""


class BasisNotSupportedError(NumericalError):
    """Operation is only defined for the eigenbasis of H0."""


class DegenerateDistributionError(NumericalError):
    """Backward probability vanished where the forward one did not."""


class SupportMismatchError(NumericalError):
    """Relative entropy is infinite: rho has weight outside sigma's support."""


class DivisionNearZeroError(NumericalError):
    """Denominator too close to zero."""


class NumericalOverflowError(NumericalError):
    """A result is too large for double precision."""
