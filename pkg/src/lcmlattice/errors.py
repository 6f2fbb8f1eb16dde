"""Exception types raised by lcmlattice.

Every domain error derives from :class:`LcmLatticeError`; the CLI maps those
to exit status 1.
"""


class LcmLatticeError(Exception):
    pass


# posets
class CycleDetected(LcmLatticeError):
    pass


class NotReduced(LcmLatticeError):
    pass


class BadIndexOrder(LcmLatticeError):
    pass


class BadIndex(LcmLatticeError, IndexError):
    pass


class NotSemilattice(LcmLatticeError):
    pass


class PosetSyntaxError(LcmLatticeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# enumeration
class SizeTooLarge(LcmLatticeError):
    pass


class NotMaximal(LcmLatticeError):
    pass


class WrongSize(LcmLatticeError):
    pass


# integer sets
class NonPositive(LcmLatticeError, ValueError):
    pass


class NotGcdClosed(LcmLatticeError):
    pass


class BadPrimes(LcmLatticeError):
    pass


class NoTopDivisor(LcmLatticeError):
    pass


# matrices
class NonIntegerAlphaInExactMode(LcmLatticeError):
    pass


class FactoringTooHard(LcmLatticeError):
    pass


# alpha search
class PrecisionExhausted(LcmLatticeError):
    pass


class NoPositiveMobius(LcmLatticeError):
    pass


class IsWedgeTree(LcmLatticeError):
    pass


class RMaxExceeded(LcmLatticeError):
    pass
