"""Exception hierarchy shared by all modules.

Each class carries an ``exit_code`` used by the command line driver.
"""


class EntDecayError(Exception):
    exit_code = 1


class ValidationError(EntDecayError, ValueError):
    exit_code = 2


class InvalidArgument(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class WrongDimension(DimensionMismatch):
    pass


class NotHermitian(ValidationError):
    pass


class InvalidSubset(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class NotSorted(ValidationError):
    pass


class CatalogError(EntDecayError, KeyError):
    exit_code = 3

    def __str__(self):
        # KeyError.__str__ would repr() the message
        return str(self.args[0]) if self.args else ""


class UnknownState(CatalogError):
    pass


class NotInCatalog(CatalogError):
    pass


class NumericalError(EntDecayError, ArithmeticError):
    exit_code = 4


class NotPSD(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass
