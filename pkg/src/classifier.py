"""
Weighted k-nearest-neighbor classifier.

Neighbors are found by exact brute force under the weighted Minkowski
distance. Tie policies:

- Distance ties at the k-th neighbor: lower training-row index wins.
- Vote ties: among the tied classes, the class whose nearest neighbor is
  closest wins; if that is also tied, the lowest class code wins.

Models are immutable after fit, so predict and predict_batch are safe to
call from multiple threads.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import ConfigError, DimensionMismatchError
from metric import MetricSpec, Norm, WeightVector, pairwise_distance_matrix, parse_norm
from weighting import FitnessVector, as_kappa, separability_fitness, weights_from_fitness

logger = logging.getLogger(__name__)

WEIGHT_MODES = ('proposed', 'uniform', 'explicit')


@dataclass(frozen=True, eq=False)
class KnnModel:
    """Training samples plus the metric used to compare queries against them."""

    features: np.ndarray
    labels: np.ndarray
    class_names: tuple
    spec: MetricSpec
    k: int
    weight_mode: str
    fitness: Optional[FitnessVector] = None

    @property
    def n_dims(self):
        return self.features.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)

    @property
    def weights(self):
        """Weights as an array (all ones for uniform mode)."""
        return self.spec.weight_array(self.n_dims)


@dataclass(frozen=True)
class Prediction:
    """Predicted class code with the neighbors and votes behind it."""

    label: int
    label_name: str
    neighbor_indices: tuple
    neighbor_distances: tuple
    votes: tuple

    def to_dict(self):
        return {
            'label': self.label_name,
            'neighbors': list(self.neighbor_indices),
            'distances': list(self.neighbor_distances),
            'votes': list(self.votes),
        }


def fit(train, k, norm=None, kappa=0.0, weight_mode='proposed', weights=None,
        fitness_fn=separability_fitness, strict=False):
    """
    Build a KNN model.

    Args:
        train: LabeledDataset
        k: Number of neighbors (1 <= k <= training size)
        norm: Norm (default Euclidean)
        kappa: Kappa or float, used in 'proposed' mode
        weight_mode: 'proposed' (fitted weights), 'uniform' (all ones) or
            'explicit' (the given weights)
        weights: WeightVector (or sequence) for 'explicit' mode
        fitness_fn: Fitness function for 'proposed' mode
        strict: Raise on all-zero fitness instead of using uniform weights

    Returns:
        KnnModel
    """
    norm = Norm(2.0) if norm is None else parse_norm(norm)
    kappa = as_kappa(kappa)
    if int(k) != k or k < 1:
        raise ConfigError(f"k must be a positive integer (got {k})")
    k = int(k)
    if k > train.n_samples:
        raise ConfigError(f"k = {k} exceeds the training set size {train.n_samples}")

    lambdas = None
    if weight_mode == 'proposed':
        lambdas = fitness_fn(train)
        fitted = weights_from_fitness(lambdas, kappa, strict=strict)
    elif weight_mode == 'uniform':
        fitted = None
    elif weight_mode == 'explicit':
        if weights is None:
            raise ConfigError("explicit weight mode requires weights")
        fitted = weights if isinstance(weights, WeightVector) else WeightVector(weights)
        if fitted.dimension != train.n_dims:
            raise DimensionMismatchError(
                f"weights have {fitted.dimension} dimensions but training data has {train.n_dims}")
    else:
        raise ConfigError(f"unknown weight mode {weight_mode!r}; choose from {WEIGHT_MODES}")

    model = KnnModel(train.features, train.labels, train.class_names,
                     MetricSpec(norm, fitted), k, weight_mode, lambdas)
    logger.debug("Fitted %s model: k=%d, %s", weight_mode, k, model.spec.describe())
    return model


def _vote(distances, labels, k, class_names):
    order = np.argsort(distances, kind='stable')[:k]
    neighbor_labels = labels[order]
    votes = np.bincount(neighbor_labels, minlength=len(class_names))

    tied = np.flatnonzero(votes == votes.max())
    if tied.size == 1:
        winner = int(tied[0])
    else:
        # first occurrence in the sorted neighbor list is that class's nearest member
        nearest = {int(c): distances[order[np.argmax(neighbor_labels == c)]] for c in tied}
        winner = min(nearest, key=lambda c: (nearest[c], c))

    return Prediction(
        label=winner,
        label_name=class_names[winner],
        neighbor_indices=tuple(int(i) for i in order),
        neighbor_distances=tuple(float(d) for d in distances[order]),
        votes=tuple(int(v) for v in votes),
    )


def predictions_from_distances(model, distances, k=None):
    """
    Predictions for precomputed query-to-training distance rows.

    Args:
        model: KnnModel
        distances: Array (n_queries x n_training) from pairwise_distance_matrix
        k: Override of model.k (must not exceed the training size)

    Returns:
        List of Prediction, one per row
    """
    k = model.k if k is None else int(k)
    if not 1 <= k <= model.features.shape[0]:
        raise ConfigError(f"k = {k} outside 1..{model.features.shape[0]}")
    return [_vote(row, model.labels, k, model.class_names) for row in distances]


def _query_rows(model, queries):
    rows = np.asarray(queries, dtype=float)
    if rows.size == 0:
        return np.empty((0, model.n_dims))
    if rows.ndim != 2 or rows.shape[1] != model.n_dims:
        width = rows.shape[-1] if rows.ndim else 0
        raise DimensionMismatchError(
            f"queries have {width} dimensions but the model has {model.n_dims}")
    return rows


def predict(model, query):
    """Predict the class of a single query vector."""
    query = np.asarray(query, dtype=float)
    if query.ndim != 1 or query.size != model.n_dims:
        raise DimensionMismatchError(
            f"query has {query.size} dimensions but the model has {model.n_dims}")
    return predict_batch(model, query[np.newaxis, :])[0]


def predict_batch(model, queries):
    """
    Predict every row of queries, preserving input order.

    Results are identical to calling predict on each row.
    """
    rows = _query_rows(model, queries)
    if rows.shape[0] == 0:
        return []
    distances = pairwise_distance_matrix(rows, model.features, model.spec)
    return predictions_from_distances(model, distances)
