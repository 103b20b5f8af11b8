"""Tube formula for the inner eps-neighbourhood of the Koch snowflake."""
from .errors import AccuracyError, ConfigurationError, DomainError, KochTubeError
from .scaling import D, LOG3, P, EpsilonIndex, index_from_x, index_of

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConfigurationError",
    "D",
    "DomainError",
    "EpsilonIndex",
    "KochTubeError",
    "LOG3",
    "P",
    "index_from_x",
    "index_of",
]
