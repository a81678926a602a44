"""Exception types shared across the package.

Everything raised on purpose derives from BraidCombError, so callers can
catch the package's failures without also swallowing genuine bugs.
"""


class BraidCombError(Exception):
    """Base class for all errors raised deliberately by this package."""


class InvalidArgumentError(BraidCombError, ValueError):
    """An argument is out of the documented range or of the wrong shape."""


class MissingImageError(BraidCombError, LookupError):
    """A homomorphism application met a generator with no assigned image."""

    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no image assigned for generator {symbol}")


class WordSizeExceededError(BraidCombError, RuntimeError):
    """An intermediate word grew past the configured cap during rewriting.

    The offending length is kept on the exception so front ends can report
    it; rewriting never truncates silently.
    """

    def __init__(self, length: int, cap: int):
        self.length = length
        self.cap = cap
        super().__init__(
            f"intermediate word of length {length} exceeds the cap of {cap}"
        )


class NoUnitCoordinateError(BraidCombError, ValueError):
    """A splitting was requested for a vector with no +1/-1 coordinate."""
