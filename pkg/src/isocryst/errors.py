"""Exception types shared across the package."""


class IsocrystError(Exception):
    """Base class for all library errors."""


class NonUnit(IsocrystError, ArithmeticError):
    pass


class PrecisionExhausted(IsocrystError, ArithmeticError):
    """A valuation or division could not be resolved at the working precision."""


class ZeroArgument(IsocrystError, ValueError):
    pass


class AlgebraMismatch(IsocrystError, ValueError):
    pass


class ZeroEntry(IsocrystError, ValueError):
    pass


class ShapeInfeasible(IsocrystError, ValueError):
    pass


class UnsupportedRank(IsocrystError, NotImplementedError):
    pass


class InadmissibleSequence(IsocrystError, ValueError):
    pass


class UnitSystemUnsolvable(IsocrystError, ArithmeticError):
    pass


class ParameterOutOfRange(IsocrystError, ValueError):
    pass


class BadLieType(IsocrystError, ValueError):
    pass


class NotIsoclinic(IsocrystError, ValueError):
    pass


class NonInvariantEntries(IsocrystError, ValueError):
    """Frobenius composite has entries outside the sigma-fixed subring."""


class SearchSpaceTooLarge(IsocrystError, ValueError):
    pass
