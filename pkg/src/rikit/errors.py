"""Exception hierarchy shared by every module in the package."""


class RikitError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ZeroTimesInfinityError(RikitError, ArithmeticError):
    """0 * inf has no safe default here; callers must disambiguate."""


class UndefinedOperationError(RikitError, ArithmeticError):
    """inf - inf, division by zero, and similar indeterminate forms."""


class ValidationError(RikitError, ValueError):
    """A structure violates one of its declared invariants."""


class NonIntegrableHeadError(RikitError):
    """Partial integrals diverge at 0, so cumulative-mass comparisons are undefined."""


class UnsupportedOperationError(RikitError):
    """Input is valid but falls outside the implemented closed forms."""


class DocumentError(RikitError, ValueError):
    """Malformed input document; carries the offending field's position."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
