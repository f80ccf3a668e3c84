"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every toolkit-specific failure."""


class ValidationError(ToolkitError, ValueError):
    """A value violates a structural invariant (shape, finiteness, parameters)."""


class DimensionMismatchError(ValidationError):
    """Operands have incompatible dimensions."""


class TruncationError(ValidationError):
    """A structured operator cannot be truncated at the requested size."""


class RankDeficiencyError(ValidationError):
    """Vectors supplied for orthonormalization are linearly dependent."""


class NonHermitianError(ValidationError):
    """An operation requiring a self-adjoint input received a non-Hermitian one."""


class NotPositiveError(ValidationError):
    """A matrix expected to be positive semidefinite is significantly indefinite."""


class UnsupportedVariantError(ToolkitError, ValueError):
    """The requested operation is not defined for this structured variant."""


class UnsupportedPropertyError(UnsupportedVariantError):
    """No exact decision is available for this property/operator combination."""


class UnknownSuiteError(ToolkitError, KeyError):
    """No registered verification suite has the requested name."""
