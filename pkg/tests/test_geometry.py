"""Tests for unidistant boundaries and KNN regions."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from classifier import fit
from datasets import LabeledDataset, synthetic_two_class
from errors import ConfigError, GeometryError
from geometry import (axis_extents, boundaries_to_frame, boundary_family, default_grid,
                      distance_field, knn_region, unidistant_boundary)
from metric import MetricSpec, Norm, WeightVector, pairwise_distance_matrix


def _spec(p, weights=(1.0, 1.0)):
    return MetricSpec(Norm(p), WeightVector(list(weights)))


def test_unit_circle():
    sample = unidistant_boundary((0, 0), 1.0, _spec(2))
    assert sample.points.shape == (360, 2)
    assert_allclose(sample.points[0], [1.0, 0.0])
    assert_allclose(sample.radii(), 1.0, rtol=1e-12)


def test_diamond_on_diagonal():
    sample = unidistant_boundary((0, 0), 1.0, _spec(1))
    assert_allclose(sample.points[45], [0.5, 0.5], atol=1e-12)


def test_weighted_ellipse_on_y_axis():
    sample = unidistant_boundary((0, 0), 1.0, _spec(2, (1.5, 0.5)))
    assert_allclose(sample.points[90], [0.0, math.sqrt(2.0)], atol=1e-9)
    assert_allclose(sample.points[90, 1], 1.414214, atol=1e-6)


def test_chebyshev_square():
    sample = unidistant_boundary((0, 0), 1.0, MetricSpec(Norm.infinite()))
    assert_allclose(np.abs(sample.points).max(axis=1), 1.0, rtol=1e-12)
    assert_allclose(sample.points[45], [1.0, 1.0], atol=1e-12)


def test_points_lie_at_the_requested_distance():
    norms, weight_list = default_grid()
    center = np.array([2.0, -3.0])
    for sample in boundary_family(center, 2.5, norms, weight_list, resolution=64):
        distances = pairwise_distance_matrix(center[np.newaxis, :], sample.points, sample.spec)[0]
        assert np.all(np.abs(distances - 2.5) <= 1e-9 * 2.5)


def test_family_order_and_resolution():
    samples = boundary_family((0, 0), 1.0, ['1', '2', 'inf'], [(1.0, 1.0), (1.5, 0.5)],
                              resolution=8)
    assert len(samples) == 6
    assert [s.spec.norm.label for s in samples] == ['1', '1', '2', '2', 'inf', 'inf']
    assert all(s.points.shape == (8, 2) for s in samples)


def test_unweighted_balls_are_nested():
    diamond, circle, square = boundary_family((0, 0), 1.0, ['1', '2', 'inf'], [None])
    assert np.all(diamond.radii() <= circle.radii() + 1e-12)
    assert np.all(circle.radii() <= square.radii() + 1e-12)


def test_ellipse_elongated_along_lower_weight():
    circle, ellipse = boundary_family((0, 0), 1.0, ['2'], [(1.0, 1.0), (1.5, 0.5)])
    half_x, half_y = axis_extents(ellipse)
    assert half_y > half_x
    assert_allclose(axis_extents(circle), (1.0, 1.0), rtol=1e-12)


def test_swapping_weights_mirrors_boundary():
    for p in (1.0, 2.0, 3.0):
        a = unidistant_boundary((0, 0), 1.0, _spec(p, (1.5, 0.5)), resolution=360)
        b = unidistant_boundary((0, 0), 1.0, _spec(p, (0.5, 1.5)), resolution=360)
        # theta -> 90 degrees - theta swaps the axes
        mirrored = b.points[(90 - np.arange(360)) % 360][:, ::-1]
        assert_allclose(a.points, mirrored, atol=1e-12)


def test_scale_equivariance():
    spec = _spec(3, (1.2, 0.8))
    small = unidistant_boundary((1, 1), 1.0, spec)
    large = unidistant_boundary((1, 1), 4.0, spec)
    assert_allclose(large.points - 1.0, 4.0 * (small.points - 1.0), rtol=1e-12, atol=1e-12)


def test_zero_weight_is_unbounded_for_finite_norm():
    with pytest.raises(GeometryError, match="axis 1"):
        unidistant_boundary((0, 0), 1.0, _spec(2, (2.0, 0.0)))
    square = unidistant_boundary((0, 0), 1.0, MetricSpec(Norm.infinite(), WeightVector([2.0, 0.0])))
    assert_allclose(np.abs(square.points).max(axis=1), 1.0, rtol=1e-12)


def test_invalid_arguments():
    with pytest.raises(ConfigError):
        unidistant_boundary((0, 0), 0.0, _spec(2))
    with pytest.raises(ConfigError):
        unidistant_boundary((0, 0), 1.0, _spec(2), resolution=4)


def test_knn_region_passes_through_kth_neighbor():
    data = synthetic_two_class(50, seed=2)
    model = fit(data, 5, weight_mode='uniform')
    region = knn_region(model, (0.0, 0.0))
    distances = np.sort(np.hypot(data.features[:, 0], data.features[:, 1]))
    assert region.radius == pytest.approx(distances[4])
    assert not region.degenerate


def test_knn_region_degenerate_on_training_point():
    data = LabeledDataset.from_arrays([[0, 0], [3, 1]], ['A', 'B'])
    region = knn_region(fit(data, 1), (0.0, 0.0), resolution=16)
    assert region.degenerate
    assert_allclose(region.points, np.zeros((16, 2)))


def test_weighted_knn_region_is_elongated():
    data = synthetic_two_class(100, 4.0, 1.0, 8.0, seed=42)
    uniform = knn_region(fit(data, 5, weight_mode='uniform'), (0.0, 0.0))
    weighted = knn_region(fit(data, 5, weight_mode='proposed'), (0.0, 0.0))
    ux, uy = axis_extents(uniform)
    wx, wy = axis_extents(weighted)
    assert ux == pytest.approx(uy, rel=1e-3)
    assert wy / wx > 1.5


def test_boundaries_to_frame():
    samples = boundary_family((0, 0), 1.0, ['2'], [(1.0, 1.0), (1.5, 0.5)], resolution=8)
    frame = boundaries_to_frame(samples, series_ids=[3, 4])
    assert list(frame.columns) == ['series_id', 'p', 'weights', 'theta', 'x', 'y']
    assert len(frame) == 16
    assert frame['series_id'].tolist() == [3] * 8 + [4] * 8
    assert frame['weights'].iloc[-1] == '(1.5,0.5)'
    assert boundaries_to_frame([]).empty


def test_distance_field():
    frame = distance_field((0, 0), 1.0, 3, _spec(1))
    assert len(frame) == 9
    corner = frame[(frame['x'] == 1.0) & (frame['y'] == 1.0)]
    assert corner['distance'].item() == pytest.approx(2.0)
    assert frame['distance'].min() == 0.0
