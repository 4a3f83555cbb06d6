"""Exception types shared across the package.

Everything derives from :class:`SchrodsimError` (itself a ``ValueError``) so
callers can catch the whole family or rely on stdlib semantics.
"""


class SchrodsimError(ValueError):
    """Base class for all errors raised by this package."""


class DimMismatch(SchrodsimError):
    """Operands have inconsistent dimensions."""


class NonSquareDim(SchrodsimError):
    """Vector length is not a perfect square, cannot devectorize."""


class NegativeRate(SchrodsimError):
    """A jump rate is negative."""


class DegenerateKernel(SchrodsimError):
    """The Liouvillian kernel is not one-dimensional."""


class DissipativityViolation(SchrodsimError):
    """The Hermitian part of the generator has a positive eigenvalue."""


class InvalidGrid(SchrodsimError):
    """Quadrature grid parameters are out of range."""


class PreparationFailure(SchrodsimError):
    """A zero-norm state cannot be prepared on the circuit."""


class NonUniformGrid(SchrodsimError):
    """Operation requires a uniformly spaced time grid."""


class GridMismatch(SchrodsimError):
    """Two series do not share the same time grid."""


class ZeroVector(SchrodsimError):
    """A zero vector was supplied where a unit vector is required."""


class TooManyQubits(SchrodsimError):
    """Register size exceeds the simulator limit."""


class DegenerateFit(SchrodsimError):
    """Not enough usable rows to fit a convergence slope."""


class InvalidDensityMatrix(SchrodsimError):
    """Matrix violates Hermiticity, unit trace, or positivity."""


class ConfigError(SchrodsimError):
    """Run configuration failed validation; message names the offending key."""
