class EvolabError(Exception):
    """Base class for every error raised by the algebra services"""


class InvalidFieldError(EvolabError, ValueError):
    """Field specification is malformed or names a non-prime modulus"""


class FieldMismatchError(EvolabError, ValueError):
    """Operands live over different fields"""


class DimensionMismatchError(EvolabError, ValueError):
    """Operands have incompatible dimensions"""


class UnsupportedEnumerationError(EvolabError):
    """Enumeration was requested over a field with infinitely many elements"""


class BudgetExceededError(EvolabError):
    """An enumeration would exceed its configured budget"""

    def __init__(self, what: str, count: int, limit: int):
        self.what = what
        self.count = count
        self.limit = limit
        super().__init__(f"{what}: {count} candidates exceed the budget of {limit}")


class CharacteristicError(EvolabError, ValueError):
    """A construction requires a field characteristic the given field lacks"""


class UndecidedError(EvolabError):
    """The question cannot be settled exactly over this field"""


class HypothesisError(EvolabError, ValueError):
    """An argument is not of the kind the operation requires"""


class InvariantViolation(EvolabError, AssertionError):
    """A self-checked postcondition failed"""


class AlgebraParseError(EvolabError, ValueError):
    """Malformed algebra definition file"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}")
