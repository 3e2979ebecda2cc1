"""Exception hierarchy shared by all modules."""


class SymtrigError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedType(SymtrigError, ValueError):
    pass


class DimensionMismatch(SymtrigError, ValueError):
    pass


class GroupTooLarge(SymtrigError):
    pass


class WeightSetNotStable(SymtrigError):
    pass


class ZeroPolynomial(SymtrigError, ValueError):
    pass


class NotRealValued(SymtrigError, ValueError):
    pass


class SupportTooLarge(SymtrigError, ValueError):
    def __init__(self, message, minimal_degree=None):
        super().__init__(message)
        self.minimal_degree = minimal_degree


class UnsupportedGroup(SymtrigError):
    pass


class NonIntegralMultiplicity(SymtrigError):
    pass


class RankDeficiency(SymtrigError):
    pass


class NotInvariant(SymtrigError, ValueError):
    pass


class DegreeTooSmall(SymtrigError, ValueError):
    pass


class BasisMismatch(SymtrigError, ValueError):
    pass


class NumericalFailure(SymtrigError, ArithmeticError):
    pass


class InfeasibleCertificate(SymtrigError):
    pass


class ParseError(SymtrigError, ValueError):
    """Malformed polynomial input; ``where`` names the offending line or field."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
