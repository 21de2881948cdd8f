"""Exception hierarchy.

Everything raised deliberately by the package derives from :class:`AhexpError`.
Precision-related failures share the :class:`PrecisionError` base so callers
can retry a whole pipeline at a larger working precision.
"""


class AhexpError(Exception):
    pass


class DivisionByZero(AhexpError, ZeroDivisionError):
    pass


class ContextMismatch(AhexpError, ValueError):
    pass


class NotPrime(AhexpError, ValueError):
    pass


class PrecisionError(AhexpError):
    pass


class ValuationUnderflow(PrecisionError):
    """A valuation dropped below the fractional-digit floor ``-M``."""


class PrecisionExhausted(PrecisionError):
    """An operation would leave an element with no known digits."""


class InsufficientPrecision(PrecisionError):
    """The known digits cannot certify a comparison."""


class NotIntegral(AhexpError, ValueError):
    pass


class NonUnitConstantTerm(AhexpError, ValueError):
    pass


class ConstantTermNotOne(AhexpError, ValueError):
    pass


class NonzeroConstantTerm(AhexpError, ValueError):
    pass


class NotPSupported(AhexpError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"nonzero coefficient at degree {index} not divisible by p")


class IntegralityViolation(AhexpError):
    """A series that must be p-integral was certified not to be (a bug signal)."""


class InternalInconsistency(AhexpError, AssertionError):
    """Two independent computations of the same verdict disagreed."""


class PropertyAbsent(AhexpError, ValueError):
    pass


class PreconditionViolated(AhexpError, ValueError):
    pass


class TooLarge(AhexpError, ValueError):
    pass
