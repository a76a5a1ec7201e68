"""Exception types raised across the toolkit."""


class ZipfkitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ZipfkitError, ValueError):
    """Invalid configuration values (bad separator, space probability, ...)."""


class CorpusFormatError(ZipfkitError, ValueError):
    """A corpus or normalization file could not be decoded or parsed."""


class RuleValidationError(ZipfkitError, ValueError):
    """A morpheme rule is malformed or duplicated."""


class RankTableFormatError(ZipfkitError, ValueError):
    """A run-length rank table has gaps, overlaps or increasing frequencies."""


class DegenerateInputError(ZipfkitError, ValueError):
    """Too few types/points for the requested estimate."""


class DomainError(ZipfkitError, ValueError):
    """Argument outside the mathematical domain of a function."""
