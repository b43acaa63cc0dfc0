"""Exception types shared across the package."""


class DcsvmError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DcsvmError):
    """A data file could not be parsed.

    Carries the file path and 1-based line number of the offending
    record so callers can report exact locations.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class DimensionError(DcsvmError):
    """Feature dimensions disagree (between samples, or sample vs model)."""


class CardinalityError(DcsvmError):
    """A dataset has too few classes or samples for the requested use."""


class SplitError(DcsvmError):
    """A dataset cannot be split as requested."""


class NumericError(DcsvmError):
    """A numeric computation produced non-finite values."""


class ValidationError(DcsvmError):
    """An argument or configuration value violates its contract."""


class ModelFormatError(DcsvmError):
    """A model file is corrupt, truncated, or from an unsupported version."""
