"""Exception hierarchy shared by every module of the package."""


class UCDensityError(Exception):
    """Base class for all errors raised by ucdensity."""


class FamilyError(UCDensityError, ValueError):
    """Invalid set-family input."""


class EmptyUniverse(FamilyError):
    pass


class DuplicateSet(FamilyError):
    pass


class TooManyElements(FamilyError):
    pass


class ElementOutOfRange(FamilyError):
    pass


class NoNonemptySet(FamilyError):
    pass


class NotUnionClosed(FamilyError):
    pass


class NotAMember(FamilyError):
    pass


class BadParameters(UCDensityError, ValueError):
    pass


class BelowDomain(UCDensityError, ValueError):
    """A bound was evaluated below the range where it is stated (n < 16)."""


class TooLarge(UCDensityError, ValueError):
    """Requested enumeration or search exceeds its size budget."""


class PreconditionViolated(UCDensityError, ValueError):
    pass


class InternalProofViolation(UCDensityError, AssertionError):
    """A case the duplicate-column induction rules out actually occurred: a bug."""


class ParseError(UCDensityError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoPairFound(UCDensityError):
    """No two elements share an abundance column."""
