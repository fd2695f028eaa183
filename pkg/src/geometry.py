"""
Unidistant boundaries: points at a fixed weighted Minkowski distance D from
a center in the plane.

Boundaries are computed from the homogeneity of the metric: along the unit
direction u(theta) the boundary lies at radius D / d(center, center + u).
"""

import logging
import math
from dataclasses import dataclass
from itertools import product

import numpy as np
import pandas as pd

from classifier import predict
from errors import ConfigError, DimensionMismatchError, GeometryError
from metric import MetricSpec, Norm, WeightVector, pairwise_distance_matrix, parse_norm

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 360
MIN_RESOLUTION = 8
AXIS_NAMES = ('x', 'y')


@dataclass(frozen=True, eq=False)
class BoundarySample:
    """Closed polyline of unidistant points, ordered by angle."""

    center: np.ndarray
    radius: float
    thetas: np.ndarray
    points: np.ndarray
    spec: MetricSpec
    degenerate: bool = False

    def radii(self):
        """Euclidean distance of every point from the center."""
        return np.hypot(*(self.points - self.center).T)


def _as_center(center):
    center = np.asarray(center, dtype=float)
    if center.shape != (2,):
        raise DimensionMismatchError(f"center must be a 2-D point (got shape {center.shape})")
    if not np.all(np.isfinite(center)):
        raise ConfigError("center must be finite")
    return center


def _boundary(center, radius, spec, resolution):
    center = _as_center(center)
    if int(resolution) != resolution or resolution < MIN_RESOLUTION:
        raise ConfigError(f"resolution must be an integer >= {MIN_RESOLUTION} (got {resolution})")
    resolution = int(resolution)
    weights = spec.weight_array(2)
    if not spec.norm.is_infinite and np.any(weights == 0):
        axis = int(np.flatnonzero(weights == 0)[0])
        raise GeometryError(
            f"zero weight on axis {axis} ({AXIS_NAMES[axis]}) makes the boundary "
            f"unbounded along that axis")

    thetas = 2.0 * math.pi * np.arange(resolution) / resolution
    directions = np.column_stack((np.cos(thetas), np.sin(thetas)))
    if radius == 0:
        points = np.tile(center, (resolution, 1))
        return BoundarySample(center, 0.0, thetas, points, spec, degenerate=True)

    unit_distances = pairwise_distance_matrix(center[np.newaxis, :], center + directions, spec)[0]
    points = center + (radius / unit_distances)[:, np.newaxis] * directions
    return BoundarySample(center, float(radius), thetas, points, spec)


def unidistant_boundary(center, radius, spec, resolution=DEFAULT_RESOLUTION):
    """
    Points at distance `radius` from `center` under `spec`.

    Args:
        center: 2-D point
        radius: Positive distance D
        spec: MetricSpec (2-D weights, finite or infinite norm)
        resolution: Number of equally spaced angles (>= 8)

    Returns:
        BoundarySample

    Raises:
        GeometryError: a zero weight with a finite norm (unbounded boundary)
    """
    if not radius > 0 or not math.isfinite(radius):
        raise ConfigError(f"radius must be positive and finite (got {radius})")
    return _boundary(center, radius, spec, resolution)


def boundary_family(center, radius, norms, weight_list, resolution=DEFAULT_RESOLUTION):
    """Boundaries for every (norm, weights) combination, norms varying slowest."""
    samples = []
    for norm, weights in product(norms, weight_list):
        if weights is not None and not isinstance(weights, WeightVector):
            weights = WeightVector(weights)
        spec = MetricSpec(parse_norm(norm), weights)
        logger.debug("Boundary D=%g, %s", radius, spec.describe())
        samples.append(unidistant_boundary(center, radius, spec, resolution))
    return samples


def default_grid():
    """Norms and weight pairs used when no grid is given."""
    norms = [Norm(1.0), Norm(2.0), Norm(3.0), Norm(10.0), Norm(100.0), Norm.infinite()]
    weights = [WeightVector([1.0, 1.0]), WeightVector([1.5, 0.5]), WeightVector([0.5, 1.5])]
    return norms, weights


def knn_region(model, query, resolution=DEFAULT_RESOLUTION):
    """
    Region around a query that encloses its k nearest training samples.

    The boundary passes through the k-th nearest neighbor. A query that
    coincides with its k-th neighbor gives a degenerate boundary.
    """
    if model.n_dims != 2:
        raise DimensionMismatchError(f"knn_region needs a 2-D model (got {model.n_dims} dimensions)")
    prediction = predict(model, query)
    return _boundary(query, prediction.neighbor_distances[-1], model.spec, resolution)


def axis_extents(sample):
    """Half-widths of the boundary along x and y."""
    spans = sample.points.max(axis=0) - sample.points.min(axis=0)
    return float(spans[0] / 2.0), float(spans[1] / 2.0)


def boundaries_to_frame(samples, series_ids=None):
    """
    Long-format table of boundary points.

    Returns:
        pandas.DataFrame with columns series_id, p, weights, theta, x, y
    """
    frames = []
    ids = range(len(samples)) if series_ids is None else series_ids
    for series_id, sample in zip(ids, samples):
        weights = 'uniform' if sample.spec.weights is None else sample.spec.weights.label()
        frames.append(pd.DataFrame({
            'series_id': series_id,
            'p': sample.spec.norm.label,
            'weights': weights,
            'theta': sample.thetas,
            'x': sample.points[:, 0],
            'y': sample.points[:, 1],
        }))
    if not frames:
        return pd.DataFrame(columns=['series_id', 'p', 'weights', 'theta', 'x', 'y'])
    return pd.concat(frames, ignore_index=True)


def distance_field(center, extent, steps, spec):
    """
    Distances from the center to every point of a square grid.

    Returns:
        pandas.DataFrame with columns x, y, distance
    """
    center = _as_center(center)
    if not extent > 0:
        raise ConfigError(f"extent must be positive (got {extent})")
    if int(steps) != steps or steps < 2:
        raise ConfigError(f"steps must be an integer >= 2 (got {steps})")
    offsets = np.linspace(-extent, extent, int(steps))
    xs, ys = np.meshgrid(center[0] + offsets, center[1] + offsets)
    grid = np.column_stack((xs.ravel(), ys.ravel()))
    distances = pairwise_distance_matrix(center[np.newaxis, :], grid, spec)[0]
    return pd.DataFrame({'x': grid[:, 0], 'y': grid[:, 1], 'distance': distances})
