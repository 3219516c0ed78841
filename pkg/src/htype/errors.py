"""Exception types shared across the package.

Each maps onto one CLI exit code (see :mod:`htype.cli`).
"""


class HTypeError(Exception):
    """Base class for all package errors."""


class ModelSpecError(HTypeError, ValueError):
    """A module-spec string or model request is malformed or inconsistent."""


class DimensionError(HTypeError, ValueError):
    """Vector or matrix dimensions do not match the module."""


class DegenerateDirection(HTypeError):
    """X_z or X_v is (numerically) zero where the operator needs both."""


class ClusterAmbiguity(HTypeError):
    """Two eigenvalue clusters are too close to separate reliably."""


class InconsistentSamples(HTypeError):
    """Random samples produced different spectral classifications."""


class BranchTrackingError(HTypeError):
    """An eigenvalue branch could not be followed across a stencil."""


class NoTermination(HTypeError):
    """The Krylov dependency search exceeded its degree bound."""


class NonGenericParameters(HTypeError):
    """Exact block parameters lie off the generic set (early dependency)."""


class TransportAccuracyError(HTypeError):
    """The parallel-transport integrator lost frame orthonormality."""
