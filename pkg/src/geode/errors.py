"""Exception hierarchy shared by the geode modules."""


class GeodeError(ValueError):
    """Base class for every error raised by this package."""


class BoundsError(GeodeError):
    """A monomial lies outside its truncation context."""


class ContextMismatchError(GeodeError):
    """Two series from different truncation contexts were combined."""


class NotInvertibleError(GeodeError):
    """Reciprocal requested for a series with zero constant term."""


class InsufficientPrecisionError(GeodeError):
    """The truncation window is too small to determine the requested result."""


class NoSquareRootError(GeodeError):
    """Constant term is zero, negative, or not the square of a rational."""


class UnsupportedStepError(GeodeError):
    """A path has a step below -1 where only Lukasiewicz steps are allowed."""


class NotFactorableError(GeodeError):
    """A path does not satisfy the class precondition of a factorization."""


class NotInClassError(GeodeError):
    """A path is not a member of the requested path class."""


class InfiniteEnumerationError(GeodeError):
    """An enumeration would not terminate without an explicit down-step count."""


class ZeroSumError(GeodeError):
    """A substitution vector that must sum to zero does not."""
