"""Exception types shared across the package."""


class EvoAlgError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(EvoAlgError):
    """Operands have incompatible sizes."""


class BackendMismatch(EvoAlgError):
    """Exact and float scalars were mixed, or a forbidden conversion was requested."""


class SingularMatrix(EvoAlgError):
    """Elimination found no acceptable pivot."""


class BadParameters(EvoAlgError):
    """Arguments violate a documented precondition."""


class NotRegular(EvoAlgError):
    """The operation requires an invertible structure matrix."""


class NotIdempotent(EvoAlgError):
    """A vector claimed to be idempotent failed revalidation."""


class SchemaError(EvoAlgError):
    """JSON input does not match the documented schema; message names the offending path."""


class InternalConsistencyError(EvoAlgError):
    """A proved statement was contradicted by computed results; indicates a bug, not a finding."""
