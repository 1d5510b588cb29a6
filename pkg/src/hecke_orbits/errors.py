"""Exception hierarchy shared by every module."""


class HeckeError(Exception):
    """Base class for all errors raised by :mod:`hecke_orbits`."""


class ValidationError(HeckeError, ValueError):
    """An input violates a defining invariant of Q*(sqrt(-n))."""


class NotSquareFree(ValidationError):
    pass


class NotEven(ValidationError):
    pass


class NotIntegral(ValidationError):
    pass


class DomainError(HeckeError, ValueError):
    pass


class MismatchedField(HeckeError, ValueError):
    pass


class ArithmeticOverflow(HeckeError, OverflowError):
    """A value left the signed 64-bit range."""


class InvalidWord(HeckeError, ValueError):
    pass


class InternalCheckError(HeckeError, AssertionError):
    """Two computations that must agree did not. Always a bug."""


class TableMismatch(InternalCheckError):
    pass


class ProfileViolation(InternalCheckError):
    pass


class NonTermination(InternalCheckError):
    pass
