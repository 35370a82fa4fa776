"""Exception types shared across the package."""


class CumulantError(Exception):
    """Base class for all package errors."""


class BoundsError(CumulantError, ValueError):
    """Input outside the supported size range."""


class DimensionError(CumulantError, ValueError):
    """Operands have incompatible ground-set sizes or arities."""


class ParseError(CumulantError, ValueError):
    """Malformed textual input."""


class MalformedMatrixError(CumulantError, ValueError):
    """Binary matrix is not a valid block encoding."""


class EmptyTargetError(CumulantError, ValueError):
    """Multi-index target with all entries zero."""


class IncompatibleTypeError(CumulantError, ValueError):
    """Partitions do not share the same block-size type."""


class InsufficientSampleError(CumulantError, ValueError):
    """Sample too small to evaluate an estimator."""


class AlgebraConsistencyError(CumulantError, RuntimeError):
    """Internal consistency check failed; indicates an implementation bug."""
