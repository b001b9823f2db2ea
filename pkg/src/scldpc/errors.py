"""Exception hierarchy shared across the package."""


class ScldpcError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(ScldpcError, ValueError):
    """An argument is outside its documented domain."""


class DimensionMismatchError(InvalidArgumentError):
    """Two messages with different field exponents were combined."""


class NonpositiveRateError(ScldpcError):
    """The requested coupling length yields a nonpositive design rate."""


class NumericError(ScldpcError):
    """A probability vector left its numeric sanity envelope."""


class GrammarError(ScldpcError, ValueError):
    """An ensemble string does not match the naming grammar."""


class DegenerateBracketError(ScldpcError):
    """Threshold bisection found no valid (success, failure) bracket."""


class WindowTooSmallError(InvalidArgumentError):
    """Window size below the minimum w+1 for this chain."""


class NoPlateauError(ScldpcError):
    """A saturation sweep hit its cap before the threshold plateaued."""


class DecodeFailureError(ScldpcError):
    """A run that was required to succeed (e.g. for complexity tracking) failed."""
