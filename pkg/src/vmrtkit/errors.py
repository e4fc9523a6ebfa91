"""Exception types shared across the toolkit."""


class VmrtError(Exception):
    """Base class for every error raised by vmrtkit."""


class DimensionMismatch(VmrtError, ValueError):
    pass


class BadPrime(VmrtError, ValueError):
    pass


class BadDimension(VmrtError, ValueError):
    pass


class BadType(VmrtError, ValueError):
    pass


class DegenerateParametrization(VmrtError):
    pass


class SecantViolation(VmrtError):
    pass


class NonStabilizing(VmrtError):
    pass


class NoIdeal(VmrtError):
    pass


class PrimeDisagreement(VmrtError):
    pass


class InvalidSymbolSystem(VmrtError):
    pass


class NotTubeModel(VmrtError):
    pass


class NotEulerSource(VmrtError):
    pass


class DegeneratePair(VmrtError):
    pass


class ParseError(VmrtError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
