"""Exception types raised by fftowers."""


class TowerError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(TowerError, ValueError):
    pass


class ReducibleModulus(TowerError, ValueError):
    """The field modulus factors; ``factor`` holds a nontrivial monic divisor."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class FieldMismatch(TowerError, TypeError):
    pass


class DivisionByZero(TowerError, ZeroDivisionError):
    pass


class BothZero(TowerError, ValueError):
    pass


class ZeroDenominator(TowerError, ZeroDivisionError):
    pass


class ParseError(TowerError, ValueError):
    """Malformed expression or spec file.

    ``position`` is a 0-based character offset into the expression; spec-file
    errors also carry 1-based ``line`` and ``column``.
    """

    def __init__(self, message, position=None, line=None, column=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        elif position is not None:
            where.append(f"position {position}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.position = position
        self.line = line
        self.column = column


class UnknownSymbol(ParseError):
    pass


class SearchSpaceTooLarge(TowerError, ValueError):
    def __init__(self, size, ceiling):
        super().__init__(f"search space of {size} candidates exceeds ceiling {ceiling}")
        self.size = size
        self.ceiling = ceiling


class LevelCapExceeded(TowerError, ValueError):
    pass


class LevelMismatch(TowerError, ValueError):
    pass
