"""
Reproduction checks on the bundled datasets and the gene-like analogue.

These run the full k x folds grid and take a few seconds each. Every grid
uses the dataset's schema preprocessing, as experiments/run_experiments.py does.
"""

import time

import numpy as np
import pytest

from datasets import default_preprocess, load_builtin, synthetic_gene_like
from evaluation import ExperimentSpec, cross_validate


def _spec(data, **overrides):
    overrides.setdefault('preprocess', default_preprocess(data.dataset_id))
    return ExperimentSpec(dataset_id=data.dataset_id, **overrides)


def _grid_means(data, seeds):
    uniform, proposed = [], []
    for seed in seeds:
        report = cross_validate(_spec(data, seed=seed), data)
        uniform.append(report.mean('uniform'))
        proposed.append(report.mean('proposed'))
    return float(np.mean(uniform)), float(np.mean(proposed))


def _cells_won(report):
    return sum(report.cell('proposed', k, f).accuracy > report.cell('uniform', k, f).accuracy
               for k in report.spec.k_values for f in report.spec.fold_counts)


def test_iris_grid():
    uniform, proposed = _grid_means(load_builtin('iris'), range(5))
    assert abs(uniform - 0.9518) <= 0.02
    assert abs(proposed - 0.9637) <= 0.02


def test_iris_grid_runs_quickly():
    iris = load_builtin('iris')
    start = time.perf_counter()
    cross_validate(_spec(iris), iris)
    assert time.perf_counter() - start < 5.0


def test_breast_cancer_grid():
    data = load_builtin('breast_cancer')
    assert default_preprocess(data.dataset_id).standardize
    uniform, proposed = _grid_means(data, [42])
    assert abs(uniform - 0.9582) <= 0.02
    assert abs(proposed - 0.9610) <= 0.02


def test_gene_like_gain():
    gains, won = [], []
    for seed in range(10):
        data = synthetic_gene_like(60, 500, 20, seed=seed)
        report = cross_validate(_spec(data, seed=seed), data)
        gains.append(report.mean('proposed') - report.mean('uniform'))
        won.append(_cells_won(report))
    assert np.mean(gains) >= 0.05
    assert min(won) >= 8, won


def test_gene_like_without_signal_is_near_chance():
    data = synthetic_gene_like(60, 200, 0, seed=1)
    report = cross_validate(_spec(data), data)
    assert abs(report.mean('uniform') - 0.5) <= 0.15
    assert abs(report.mean('proposed') - 0.5) <= 0.15


@pytest.mark.parametrize('name', ['iris', 'breast_cancer'])
def test_kappa_one_reproduces_baseline(name):
    data = load_builtin(name)
    report = cross_validate(_spec(data, kappa=1.0), data)
    mismatched = [(k, f) for k in report.spec.k_values for f in report.spec.fold_counts
                  if report.cell('proposed', k, f).correct != report.cell('uniform', k, f).correct]
    assert mismatched == []


def test_experiment_script_uses_schema_preprocessing():
    from experiments.run_experiments import protocol_spec

    assert protocol_spec(load_builtin('breast_cancer')).preprocess.standardize
    assert not protocol_spec(load_builtin('iris')).preprocess.standardize
    assert protocol_spec(synthetic_gene_like(20, 10, 2)).seed == 42
