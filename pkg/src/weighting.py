"""
Per-dimension weights from class separability.

Fitness of dimension i sums, over every unordered pair of classes (s, t),

    lambda_i = sum |mu_s,i - mu_t,i| / (sigma_s,i + sigma_t,i)

and the weights interpolate between fitness-proportional and uniform:

    w_i = kappa + (1 - kappa) * n * lambda_i / sum(lambda)

so sum(w) = n for every kappa in [0, 1]. kappa = 1 gives all-ones weights.

Any callable LabeledDataset -> FitnessVector can replace the built-in
separability fitness.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import pandas as pd

from errors import ConfigError, DataError, DegenerateFitnessError
from metric import WeightVector, uniform_weights

logger = logging.getLogger(__name__)

# Floor for sigma_s + sigma_t when the class means differ (feature units)
DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class FitnessVector:
    """Non-negative fitness (lambda) per dimension."""

    lambdas: np.ndarray

    def __post_init__(self):
        arr = np.array(self.lambdas, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ConfigError("fitness must be a non-empty one-dimensional sequence")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ConfigError("fitness values must be finite and non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, 'lambdas', arr)

    def __len__(self):
        return self.lambdas.size


@dataclass(frozen=True)
class Kappa:
    """Trust in the fitness weights: 0 = fully fitness-driven, 1 = uniform."""

    value: float

    def __post_init__(self):
        value = float(self.value)
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"kappa must be in [0, 1] (got {self.value})")
        object.__setattr__(self, 'value', value)


def as_kappa(value):
    """
    Coerce a float or Kappa to a validated Kappa.

    Args:
        value: float in [0, 1] or Kappa

    Returns:
        Kappa
    """
    return value if isinstance(value, Kappa) else Kappa(value)


@dataclass(frozen=True, eq=False)
class ClassStatistics:
    """Per-class mean, population standard deviation and count, per dimension."""

    classes: tuple
    means: np.ndarray
    stds: np.ndarray
    counts: np.ndarray

    @property
    def n_dims(self):
        return self.means.shape[1]


def class_statistics(data):
    """
    Per-class, per-dimension mean and population standard deviation.

    Only classes present in the data are included.

    Args:
        data: LabeledDataset

    Returns:
        ClassStatistics with one row per present class (ascending class code)
    """
    if data.n_samples == 0:
        raise DataError("cannot compute class statistics of an empty dataset")
    classes = np.unique(data.labels)
    means = np.empty((classes.size, data.n_dims))
    stds = np.empty((classes.size, data.n_dims))
    counts = np.empty(classes.size, dtype=int)
    for row, cls in enumerate(classes):
        members = data.features[data.labels == cls]
        means[row] = members.mean(axis=0)
        stds[row] = members.std(axis=0)
        counts[row] = members.shape[0]
    return ClassStatistics(tuple(int(c) for c in classes), means, stds, counts)


def fitness(stats):
    """
    Separability fitness summed over all unordered class pairs.

    A pair whose means coincide contributes 0; otherwise a zero denominator
    is floored at DENOMINATOR_FLOOR.

    Raises:
        DegenerateFitnessError: fewer than two classes
    """
    if len(stats.classes) < 2:
        raise DegenerateFitnessError(
            f"fitness needs at least 2 classes (got {len(stats.classes)})")
    lambdas = np.zeros(stats.n_dims)
    for s, t in combinations(range(len(stats.classes)), 2):
        numerator = np.abs(stats.means[s] - stats.means[t])
        denominator = np.maximum(stats.stds[s] + stats.stds[t], DENOMINATOR_FLOOR)
        lambdas += np.where(numerator == 0, 0.0, numerator / denominator)
    return FitnessVector(lambdas)


def separability_fitness(data):
    """Built-in fitness function: class statistics, then pairwise separability."""
    return fitness(class_statistics(data))


def weights_from_fitness(lambdas, kappa, strict=False):
    """
    Convert fitness into weights summing to n.

    Args:
        lambdas: FitnessVector
        kappa: Kappa (or float in [0, 1])
        strict: If True, an all-zero fitness raises instead of falling back

    Returns:
        WeightVector

    Raises:
        DegenerateFitnessError: all-zero fitness with kappa < 1 in strict mode
    """
    kappa = as_kappa(kappa)
    lam = lambdas.lambdas
    n = lam.size
    if kappa.value == 1.0:
        return uniform_weights(n)

    total = float(lam.sum())
    if total <= 0:
        if strict:
            raise DegenerateFitnessError("fitness sums to zero; weights are undefined")
        logger.warning("Fitness sums to zero over %d dimensions; using uniform weights", n)
        return uniform_weights(n)

    return WeightVector(kappa.value + (1.0 - kappa.value) * n * lam / total)


def fit_weights(data, kappa, fitness_fn=separability_fitness, strict=False):
    """Weights for a labeled training set: fitness_fn, then weights_from_fitness."""
    return weights_from_fitness(fitness_fn(data), kappa, strict=strict)


def fitness_report(data, kappa, fitness_fn=separability_fitness, strict=False):
    """
    Table of fitness and weight per dimension, fitted on the whole dataset.

    Returns:
        pandas.DataFrame with columns dimension, name, lambda, weight
    """
    lambdas = fitness_fn(data)
    weights = weights_from_fitness(lambdas, kappa, strict=strict)
    return pd.DataFrame({
        'dimension': np.arange(data.n_dims),
        'name': list(data.dimension_names),
        'lambda': lambdas.lambdas,
        'weight': weights.values,
    })
