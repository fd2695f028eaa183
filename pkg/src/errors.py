"""
Exception hierarchy for the weighted KNN toolkit.

Library code raises these; only the command line and the web app turn them
into exit codes or HTTP responses.
"""


class WeightedKnnError(Exception):
    """Base class for all errors raised by this project."""


class ConfigError(WeightedKnnError, ValueError):
    """Invalid parameter value (norm, kappa, k, fold count, generator settings)."""


class DimensionMismatchError(WeightedKnnError, ValueError):
    """Vectors, weights or datasets disagree on dimensionality."""


class DataError(WeightedKnnError):
    """Dataset could not be read or is malformed."""


class DegenerateFitnessError(WeightedKnnError):
    """Fitness is undefined (fewer than two classes) or sums to zero in strict mode."""


class GeometryError(WeightedKnnError):
    """A unidistant boundary cannot be formed (e.g. unbounded along an axis)."""
