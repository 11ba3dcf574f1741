"""Exception hierarchy.

``InputError`` subclasses signal bad user input (CLI exit code 2).
``VerificationFailed`` subclasses signal that an internal consistency check
did not hold (CLI exit code 1); on valid input they indicate a bug.
"""


class BHKError(Exception):
    """Base class for all errors raised by this package."""


class InputError(BHKError, ValueError):
    pass


class PolynomialSyntaxError(InputError):
    pass


class DuplicateMonomial(InputError):
    pass


class CoefficientUnsupported(InputError):
    pass


class NotSquare(InputError):
    pass


class SingularExponentMatrix(InputError):
    pass


class NotInvertibleNondegenerate(InputError):
    pass


class NonpositiveWeight(InputError):
    pass


class NotInAmbient(InputError):
    pass


class ElementNotInGroup(InputError):
    pass


class NotCYType(InputError):
    pass


class SetupMismatch(InputError):
    pass


class LatticeError(BHKError, ArithmeticError):
    pass


class SingularMatrix(LatticeError):
    pass


class NotInLattice(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class InfiniteQuotient(LatticeError):
    pass


class GroupTooLarge(BHKError):
    pass


class VerificationFailed(BHKError):
    """A consistency check failed. ``clause`` names the failing check."""

    def __init__(self, message, clause=None):
        super().__init__(message)
        self.clause = clause


class NonPrimitiveRay(VerificationFailed):
    pass


class NegativeExponent(VerificationFailed):
    pass


class DegenerateSimplex(VerificationFailed):
    pass


class ProbeFailure(VerificationFailed):
    def __init__(self, message, point=None):
        super().__init__(message, clause="probe")
        self.point = point
