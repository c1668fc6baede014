"""Exception hierarchy.

Every error raised by the library derives from :class:`TrendError` and from
``ValueError``, so callers that only care about bad input can catch the
builtin.
"""


class TrendError(ValueError):
    """Base class for all library errors."""


class SeriesLengthError(TrendError):
    """Series (or segment) too short for the requested operation."""


class DomainError(TrendError):
    """Non-positive price where a log-domain operation needs positivity."""


class DegenerateInputError(TrendError):
    """Coincident ordinals or otherwise singular construction input."""


class UndefinedVarianceError(TrendError):
    """Observed values have zero variance, so R^2 is undefined."""


class ConfigError(TrendError):
    """Invalid configuration value (e.g. empty period grid)."""


class KindMismatchError(TrendError):
    """Extrema of different kinds combined where one kind is required."""


class InvalidEventError(TrendError):
    """Operation received a line event of the wrong kind."""


class IncompleteFormationError(TrendError):
    """Formation is missing the flanking extrema of its maturation line."""


class BoundsError(TrendError):
    """Segment or epoch lies outside the series."""


class ParseError(TrendError):
    """Malformed input file. ``line`` is the 1-based physical line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(ParseError):
    """Input file has a header but no data rows (or nothing at all)."""
