"""Exception types shared across the package.

Every error carries enough context in its message to act on (which cap was
exceeded, which index was out of range) so CLI users never need a traceback.
"""


class Char2CatError(Exception):
    """Base class for all package-specific errors."""


class LevelTooLarge(Char2CatError):
    """A level or category index exceeds the configured size cap."""


class LevelMismatch(Char2CatError):
    """Two ring or fusion elements from different levels were combined."""


class SubsetOutOfRange(Char2CatError):
    """A subset bitmask mentions a generator above the ambient level."""


class GeneratorOutOfRange(Char2CatError):
    """A generator index lies outside 1..n."""


class NotIntegral(Char2CatError):
    """An exact linear solve produced a non-integer entry.

    This signals an internal inconsistency and is surfaced rather than
    silently rounded.
    """


class DimensionMismatch(Char2CatError):
    """Matrix or vector shapes are incompatible with the requested level."""


class NotTiltingCharacter(Char2CatError):
    """A symmetric character is not a nonnegative combination of tilting
    characters."""


class OrderTooLarge(Char2CatError):
    """A power-series truncation order exceeds the configured cap."""


class LabelOutOfRange(Char2CatError):
    """A label lies outside the allowed range 0..2^(n+1)-2."""
