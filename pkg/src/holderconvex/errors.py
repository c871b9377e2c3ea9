"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EvaluationError(ArithmeticError):
    """The numeric shadow of a formal element could not be evaluated reliably."""


class ShapingError(ValueError):
    """Probe inputs cannot be arranged so that every quantity stays in the field."""


class ParseError(ValueError):
    """Malformed expression text.

    ``position`` is the 0-based offset of the offending character.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
