"""Exception hierarchy shared by all srr modules.

Three branches matter to callers (and to the CLI exit codes): bad input
data (ValidationError, exit 2), an enumeration guard tripping (GuardError,
exit 3), and unreadable input files (ParseError, exit 4).
"""


class SrrError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SrrError):
    """Input violates a documented precondition or invariant."""


class ParseError(SrrError):
    """A matrix file or rational literal could not be parsed."""


class GuardError(SrrError):
    """An enumeration guard was exceeded; the computation refuses to degrade."""


# --- field / linear algebra ---

class NotPrime(ValidationError):
    pass


class ReducibleModulus(ValidationError):
    pass


class MissingModulus(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


# --- recovery systems ---

class IndexOutOfRange(ValidationError):
    pass


class NotARecoverySet(ValidationError):
    pass


# --- code analysis ---

class NotSystematic(ValidationError):
    pass


class NotPrimitive(ValidationError):
    pass


class FieldTooSmall(ValidationError):
    pass


# --- polyhedra ---

class EmptyPolytope(ValidationError):
    pass


class NegativeObjective(ValidationError):
    pass


class TooManyBases(GuardError):
    pass


class Explosion(GuardError):
    pass


class TooLarge(GuardError):
    pass


# --- region / bounds ---

class RegimeViolation(ValidationError):
    pass


class DemandTooLarge(ValidationError):
    pass


# --- cli ---

class LengthMismatch(ValidationError):
    pass


class UnsupportedDimension(ValidationError):
    pass
