"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Exception hierarchy.  Every error raised by the library derives from
LocalEpsError (itself a ValueError, matching how the rest of the code base
reports bad inputs) and carries the exit code the command line front end
returns when it escapes a verb.
"""


class LocalEpsError(ValueError):
    exit_code = 1


########## cyclo
class DivisionByZero(LocalEpsError, ZeroDivisionError):
    pass


class IncompatibleBase(LocalEpsError):
    pass


class ParseError(LocalEpsError):
    exit_code = 2


########## finite fields
class InvalidPrime(LocalEpsError):
    pass


class NotPrimePower(InvalidPrime):
    pass


class BothTrivial(LocalEpsError):
    pass


########## local fields / epsilon
class UnsupportedModel(LocalEpsError):
    exit_code = 3


class ConductorMismatch(LocalEpsError):
    pass


class NotUnramified(LocalEpsError):
    pass


class NoValidY(LocalEpsError):
    pass


class NoValidC(LocalEpsError):
    pass


class PreconditionViolated(LocalEpsError):
    pass


class UnsupportedExponent(LocalEpsError):
    pass


########## lambda
class OddDegree(LocalEpsError):
    pass


class WildPrime(LocalEpsError):
    pass


class OpenProblem(LocalEpsError):
    exit_code = 3


########## groups
class NotAGroup(LocalEpsError):
    pass


class NotClosed(LocalEpsError):
    pass


class TooLarge(LocalEpsError):
    pass


class AxiomViolation(LocalEpsError):
    pass


class NotSubgroup(LocalEpsError):
    pass


class NotAbelian(LocalEpsError):
    pass


class Degenerate(LocalEpsError):
    """Raised for a degenerate alternating character; `radical` holds the
    sorted element ids of its radical."""

    def __init__(self, message, radical=()):
        super().__init__(message)
        self.radical = tuple(radical)


########## heisenberg
class NotInvariant(LocalEpsError):
    pass


class NotSquareIndex(LocalEpsError):
    pass


class GdNotInZ(LocalEpsError):
    pass


class InconsistentExtensionData(LocalEpsError):
    pass


class DimensionNotTame(LocalEpsError):
    pass


class MissingCharacterData(LocalEpsError):
    pass


class NotARoot(LocalEpsError):
    pass


class ConductorTooSmall(LocalEpsError):
    pass
