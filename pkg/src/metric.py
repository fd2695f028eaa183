"""
Weighted Minkowski distance family.

    d(x, y) = (sum_i w_i * |x_i - y_i|^p)^(1/p),   sum_i w_i = n,  w_i >= 0

p = 1 is the city block distance, p = 2 the Euclidean distance and the
infinite norm the Chebyshev (chessboard) distance. All functions here are pure
and operate on plain numpy arrays, so they are safe to call from any thread.

Finite norms are evaluated as M * (sum_i w_i (|d_i| / M)^p)^(1/p) with
M = max_i |d_i|, which keeps |d|^p from overflowing for large p. Dimensions
are always accumulated in ascending index order so a batch matrix and the
matching scalar calls agree bit for bit.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import ConfigError, DimensionMismatchError

# Allowed drift of sum(w) away from n, relative to n
WEIGHT_SUM_TOLERANCE = 1e-9

_INFINITE_NAMES = {'inf', 'infinity', 'chebyshev', 'max'}


@dataclass(frozen=True)
class Norm:
    """Order p of the distance; use Norm.infinite() for the Chebyshev limit."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise ConfigError(f"norm must be >= 1 (got {self.p})")
        object.__setattr__(self, 'p', p)

    @classmethod
    def finite(cls, p):
        """Finite norm of order p (p >= 1); rejects inf."""
        if math.isinf(float(p)):
            raise ConfigError("finite norm requires a finite p; use Norm.infinite()")
        return cls(p)

    @classmethod
    def infinite(cls):
        """The Chebyshev limit p = inf."""
        return cls(math.inf)

    @property
    def is_infinite(self):
        return math.isinf(self.p)

    @property
    def label(self):
        """Short text form used in tables and file names ('2', '0.5', 'inf')."""
        if self.is_infinite:
            return 'inf'
        return f"{self.p:g}"

    def __str__(self):
        return self.label


def parse_norm(value):
    """
    Build a Norm from a number or a string such as '2', '3.5' or 'inf'.

    Raises:
        ConfigError: if the value is not a number >= 1 or an infinity alias
    """
    if isinstance(value, Norm):
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in _INFINITE_NAMES:
            return Norm.infinite()
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"norm must be >= 1 or 'inf' (got {value!r})") from None
    return Norm(float(value))


@dataclass(frozen=True, eq=False)
class WeightVector:
    """
    Per-dimension importance weights.

    Every weight is non-negative and the weights sum to the dimensionality n
    (within WEIGHT_SUM_TOLERANCE * n). The stored array is read-only.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ConfigError("weights must be a non-empty one-dimensional sequence")
        if not np.all(np.isfinite(arr)):
            raise ConfigError("weights must be finite")
        if np.any(arr < 0):
            bad = int(np.flatnonzero(arr < 0)[0])
            raise ConfigError(f"weights must be non-negative (w[{bad}] = {arr[bad]})")
        n = arr.size
        total = float(arr.sum())
        if abs(total - n) > WEIGHT_SUM_TOLERANCE * n:
            raise ConfigError(f"weights must sum to n = {n} (got {total:.12g})")
        arr.setflags(write=False)
        object.__setattr__(self, 'values', arr)

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    @property
    def dimension(self):
        return self.values.size

    def tolist(self):
        return [float(w) for w in self.values]

    def label(self):
        return '(' + ','.join(f"{w:g}" for w in self.values) + ')'


def uniform_weights(n):
    """All-ones weights for n dimensions (ordinary Minkowski distance)."""
    if n < 1:
        raise ConfigError(f"dimensionality must be >= 1 (got {n})")
    return WeightVector(np.ones(n))


@dataclass(frozen=True)
class MetricSpec:
    """Norm plus optional weights; weights=None means all ones."""

    norm: Norm
    weights: Optional[WeightVector] = None

    def weight_array(self, n):
        """Weights as an array of length n, checking dimensionality."""
        if self.weights is None:
            return np.ones(n)
        w = self.weights.values
        if w.size != n:
            raise DimensionMismatchError(
                f"weights have {w.size} dimensions but vectors have {n}")
        if np.any(w < 0):
            raise ConfigError("weights must be non-negative")
        return w

    def describe(self):
        weights = 'uniform' if self.weights is None else self.weights.label()
        return f"p={self.norm.label}, w={weights}"


def _as_vector(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be a one-dimensional vector")
    if arr.size == 0:
        raise DimensionMismatchError(f"{name} must have at least one dimension")
    if not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name} contains non-finite values")
    return arr


def _as_rows(rows, name, n=None):
    arr = np.asarray(rows, dtype=float)
    if arr.size == 0 and arr.ndim < 2:
        return np.empty((0, n if n is not None else 0))
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be a two-dimensional array of rows")
    if arr.shape[1] == 0:
        raise DimensionMismatchError(f"{name} rows must have at least one dimension")
    if n is not None and arr.shape[0] > 0 and arr.shape[1] != n:
        raise DimensionMismatchError(
            f"{name} rows have {arr.shape[1]} dimensions, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name} contains non-finite values")
    return arr


def _check_pair(x, y):
    if x.size != y.size:
        raise DimensionMismatchError(
            f"dimension mismatch: x has length {x.size}, y has length {y.size}")


def _distance_block(a, b, weights, norm):
    """Distances between every row of a and every row of b (shape len(a) x len(b))."""
    shape = (a.shape[0], b.shape[0])
    n = a.shape[1]

    scale = np.zeros(shape)
    for i in range(n):
        np.maximum(scale, np.abs(a[:, i, None] - b[None, :, i]), out=scale)
    if norm.is_infinite:
        # weights cancel in the limit
        return scale

    p = norm.p
    safe = np.where(scale > 0, scale, 1.0)
    total = np.zeros(shape)
    for i in range(n):
        ratio = np.abs(a[:, i, None] - b[None, :, i]) / safe
        total += weights[i] * ratio ** p
    return np.where(scale > 0, safe * total ** (1.0 / p), 0.0)


def minkowski_distance(x, y, norm):
    """
    Ordinary (unweighted) Minkowski distance.

    Args:
        x: First vector
        y: Second vector of the same length
        norm: Norm instance (or anything parse_norm accepts)

    Returns:
        float: (sum |x_i - y_i|^p)^(1/p), or max |x_i - y_i| for the infinite norm
    """
    return weighted_minkowski_distance(x, y, MetricSpec(parse_norm(norm)))


def weighted_minkowski_distance(x, y, spec):
    """
    Weighted Minkowski distance between two vectors.

    Args:
        x: First vector
        y: Second vector of the same length
        spec: MetricSpec with the norm and (optional) weights

    Returns:
        float: (sum w_i |x_i - y_i|^p)^(1/p); the unweighted Chebyshev
        distance for the infinite norm
    """
    x = _as_vector(x, 'x')
    y = _as_vector(y, 'y')
    _check_pair(x, y)
    weights = spec.weight_array(x.size)
    return float(_distance_block(x[np.newaxis, :], y[np.newaxis, :], weights, spec.norm)[0, 0])


def pairwise_distance_matrix(a, b, spec):
    """
    Distance matrix between two sets of rows.

    Entry (i, j) equals weighted_minkowski_distance(a[i], b[j], spec) exactly.
    An empty b yields a matrix with zero columns.
    """
    a = _as_rows(a, 'a')
    n = a.shape[1] if a.shape[0] > 0 else None
    b = _as_rows(b, 'b', n)
    if n is None:
        n = b.shape[1]
    if a.shape[0] > 0 and b.shape[0] > 0 and a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(
            f"dimension mismatch: a rows have length {a.shape[1]}, b rows have length {b.shape[1]}")
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[0]))
    weights = spec.weight_array(n)
    return _distance_block(a, b, weights, spec.norm)


def euclidean_distance(x, y):
    """
    Unweighted distance with p = 2.

    Args:
        x, y: Equal-length real vectors

    Returns:
        float
    """
    return minkowski_distance(x, y, Norm(2.0))


def manhattan_distance(x, y):
    """Unweighted distance with p = 1 (sum of absolute differences)."""
    return minkowski_distance(x, y, Norm(1.0))


def chebyshev_distance(x, y):
    """Largest absolute coordinate difference."""
    return minkowski_distance(x, y, Norm.infinite())
