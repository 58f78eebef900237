"""Exception hierarchy shared by every jetlab module."""


class JetlabError(Exception):
    """Base class for all library errors."""


class FieldError(JetlabError):
    pass


class ZeroInversion(FieldError, ZeroDivisionError):
    pass


class NonInvertible(FieldError):
    """An extension residue shares a factor with a reducible modulus."""


class DescriptorMismatch(FieldError):
    pass


class WrongCharacteristic(FieldError):
    pass


class NotPrime(FieldError, ValueError):
    pass


class ContextMismatch(JetlabError):
    pass


class UnknownVariable(JetlabError, KeyError):
    pass


class MissingAssignment(JetlabError):
    pass


class ParseError(JetlabError, ValueError):
    """Raised with a 1-based ``line`` and ``column`` when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class StepLimitExceeded(JetlabError):
    pass


class UnitIdeal(JetlabError):
    pass


class CharacteristicDividesFactorial(JetlabError):
    pass


class PointNotOnVariety(JetlabError):
    pass


class FieldMismatch(JetlabError):
    pass


class LevelOutOfRange(JetlabError, ValueError):
    pass


class BadCodim(JetlabError, ValueError):
    pass


class SingularCenter(JetlabError):
    pass


class ResidualNonzero(JetlabError):
    pass


class BudgetExceeded(JetlabError):
    pass


class UnknownScenario(JetlabError, KeyError):
    pass
