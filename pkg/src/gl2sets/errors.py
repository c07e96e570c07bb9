"""Exception hierarchy shared by every module of the package."""


class Gl2SetsError(Exception):
    """Base class for all errors raised by this package."""


# finite fields

class FieldError(Gl2SetsError):
    pass


class NotPrime(FieldError, ValueError):
    pass


class NotPrimePower(FieldError, ValueError):
    pass


class DegreeTooLarge(FieldError, ValueError):
    pass


class IncompatibleFields(FieldError, TypeError):
    pass


class MixedFields(FieldError, TypeError):
    pass


class NotAnExtension(FieldError, TypeError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


# groups and G-sets

class GroupTooLarge(Gl2SetsError):
    pass


class ExtensionNotRegistered(Gl2SetsError):
    pass


class NotCyclic(Gl2SetsError, ValueError):
    pass


class GroupMismatch(Gl2SetsError, ValueError):
    pass


# claim verification

class NoWitnessFound(Gl2SetsError):
    pass


class HypothesisNotSatisfied(Gl2SetsError, ValueError):
    pass


class UnsupportedParameter(Gl2SetsError, ValueError):
    pass
