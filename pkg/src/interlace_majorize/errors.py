"""Exception hierarchy shared by all modules."""


class MajorizeError(Exception):
    """Base class for every error raised by this package."""


class DegreeTooLow(MajorizeError):
    pass


class NoSignChange(MajorizeError):
    pass


class LengthMismatch(MajorizeError, ValueError):
    pass


class EpsOutOfRange(MajorizeError, ValueError):
    pass


class SharedRoots(MajorizeError):
    pass


class NonSimpleRoots(MajorizeError):
    pass


class DegenerateEmpty(MajorizeError):
    """Every root is shared, so p == q and nothing is left after deflation."""


class NoCommonInterlacer(MajorizeError):
    pass


class BracketFailure(MajorizeError):
    """A root bracket predicted by the interlacing structure did not change sign."""


class TOutOfOpenRange(MajorizeError, ValueError):
    pass


class GridTooSmall(MajorizeError, ValueError):
    pass


class GridExhausted(MajorizeError):
    """Refinement hit its resolution cap with steps still inconclusive."""


class SpecInfeasible(MajorizeError):
    pass


class SpecInvalid(MajorizeError, ValueError):
    pass


class TrialsOutOfRange(MajorizeError, ValueError):
    pass
