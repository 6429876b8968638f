"""Exception hierarchy for the whole package.

Every error raised by the library is a subclass of :class:`HeckeError`,
so callers (notably the CLI) can map any computational failure to a
single exit path while still matching on the precise condition.
"""

__all__ = [
    "HeckeError",
    "NotASubpartition",
    "WeightExceedsLevel",
    "DegreeMismatch",
    "LevelMismatch",
    "IndexOutOfRange",
    "NonCommutingValues",
    "NotCentral",
    "NotBiInvariant",
    "InexactDivision",
    "LengthBound",
    "InsufficientDegree",
    "ValidationFailure",
    "NonIntegerCoefficient",
    "UsageError",
]


class HeckeError(Exception):
    """Base class for all library errors."""


class NotASubpartition(HeckeError):
    """A multiset difference was requested with a part in excess."""


class WeightExceedsLevel(HeckeError):
    """A partition's weight |mu| + len(mu) exceeds the working level n."""


class DegreeMismatch(HeckeError):
    """A permutation moves points beyond the declared ambient degree."""


class LevelMismatch(HeckeError):
    """Two algebra elements live at different levels."""


class IndexOutOfRange(HeckeError):
    """A generator index lies outside its valid range."""


class NonCommutingValues(HeckeError):
    """Symmetric-function evaluation was attempted at non-commuting values."""


class NotCentral(HeckeError):
    """An element is not constant on conjugacy classes."""


class NotBiInvariant(HeckeError):
    """An element is not constant on hyperoctahedral double cosets."""


class InexactDivision(HeckeError):
    """An integer division that must be exact left a remainder."""


class LengthBound(HeckeError):
    """A partition has more parts than the operation admits."""


class InsufficientDegree(HeckeError):
    """Monomials up to the given degree do not span the coefficient lattice."""


class ValidationFailure(HeckeError):
    """A fitted polynomial failed to predict a held-out data point."""


class NonIntegerCoefficient(HeckeError):
    """A binomial-basis fit produced a non-integer coefficient."""


class UsageError(HeckeError):
    """Invalid command-line usage."""
