"""Exception hierarchy shared by all modules."""


class HarmonicZerosError(Exception):
    """Base class for every error raised by this package."""


class BothZero(HarmonicZerosError, ValueError):
    pass


class NotCoprime(HarmonicZerosError, ValueError):
    pass


class DegenerateComposition(HarmonicZerosError, ValueError):
    pass


class DegreeZero(HarmonicZerosError, ValueError):
    pass


class DidNotConverge(HarmonicZerosError, RuntimeError):
    """Root iteration stalled; ``partial`` holds the best RootSet reached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class OutOfScope(HarmonicZerosError, ValueError):
    """Instance has deg(r) < 2."""


DegreeTooLow = OutOfScope


class PoleDegenerate(HarmonicZerosError, ValueError):
    pass


class NotAZero(HarmonicZerosError, ValueError):
    pass


class ZeroOnCurve(HarmonicZerosError, ValueError):
    pass


class NonIntegerWinding(HarmonicZerosError, RuntimeError):
    pass


class SampleBudgetExceeded(HarmonicZerosError, RuntimeError):
    pass


class OrbitBudgetExceeded(HarmonicZerosError, RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class EmptyWindow(HarmonicZerosError, ValueError):
    pass


class WrongCase(HarmonicZerosError, ValueError):
    pass


class DuplicatePosition(HarmonicZerosError, ValueError):
    pass
