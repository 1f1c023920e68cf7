"""Exception hierarchy shared by all modules."""


class HodgeRingError(Exception):
    """Base class for every error raised by this package."""


class FieldConfigError(HodgeRingError):
    """Operands live in incompatible fields, or the field itself is misconfigured."""


class DivisionByZero(HodgeRingError, ZeroDivisionError):
    pass


class DimensionMismatch(HodgeRingError, ValueError):
    pass


class InconsistentSystem(HodgeRingError, ValueError):
    """A linear system has no solution."""


class ValidationError(HodgeRingError):
    """Input data violates a structural hypothesis (non-symmetric form, H^{2,0} = 0, ...)."""

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class CertificateFailure(HodgeRingError):
    """An exact certificate that the construction relies on did not hold."""

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class UnsupportedCenter(HodgeRingError):
    """The center is outside what the factorization routines can decide."""


class ParseError(HodgeRingError, ValueError):
    def __init__(self, message, line=None, key=None):
        where = []
        if key is not None:
            where.append(f"key {key!r}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.key = key
