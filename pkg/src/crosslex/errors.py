"""Exception hierarchy shared by all crosslex modules."""


class CrosslexError(Exception):
    """Base class for all crosslex errors."""


class FormatError(CrosslexError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"{message} (line {line_number})"
        super().__init__(message)
        self.line_number = line_number


class DimensionError(CrosslexError):
    """Vector or matrix dimensions do not agree."""


class DomainError(CrosslexError):
    """Numeric input outside the valid domain (e.g. zero vector for cosine)."""


class ConfigurationError(CrosslexError):
    """Invalid configuration value or unknown configuration key."""


class InsufficientDataError(CrosslexError):
    """Not enough data to perform the operation."""


class InsufficientOverlapError(InsufficientDataError):
    """Lexicon and vocabularies share no usable pairs; alignment impossible."""


class DegenerateDataError(InsufficientDataError):
    """Training data degenerate (e.g. a single class for a binary classifier)."""


class NotFoundError(CrosslexError):
    """Requested word or language is unknown."""


class SingularityError(CrosslexError):
    """Covariance is rank-deficient; retry with a positive regularization lambda."""


class ProtocolError(CrosslexError):
    """Evaluation protocol violated (e.g. zero-shot with train == test language)."""
