"""Exception types raised across the package."""


class ScsError(Exception):
    """Base class for all package errors."""


class NotHermitian(ScsError, ValueError):
    pass


class NotAntiHermitian(ScsError, ValueError):
    pass


class NotPSD(ScsError, ValueError):
    pass


class NoConvergence(ScsError, ArithmeticError):
    pass


class DimensionMismatch(ScsError, ValueError):
    pass


class SpinMismatch(ScsError, ValueError):
    pass


class ThetaNearPi(ScsError, ValueError):
    """The polar angle is too close to pi for a finite stereographic label."""


class DegenerateState(ScsError, ValueError):
    """The superposition cancels to the null vector and cannot be normalized."""


class NotDensityMatrix(ScsError, ValueError):
    pass


class RankExceeded(ScsError, ValueError):
    pass
