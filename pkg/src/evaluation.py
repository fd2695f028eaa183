"""
Stratified cross-validation of uniform vs. fitness-weighted KNN.

The experiment grid is k in {1, 3, 5} x folds in {3, 5, 10} x method in
{'uniform', 'proposed'}. Both methods of a fold count share one fold
assignment, and weights are fitted on the training folds only.

Accuracy per cell is pooled (correct / total over all folds) unless
ExperimentSpec.pooled is False, in which case per-fold accuracies are
averaged. Mean and sd per method are taken over the valid cells; sd uses
the sample standard deviation (divisor cells - 1).
"""

import hashlib
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
import pandas as pd

from classifier import fit, predictions_from_distances
from datasets import PreprocessSpec, preprocess, subset
from errors import ConfigError, DataError, WeightedKnnError
from metric import Norm, pairwise_distance_matrix, parse_norm
from weighting import Kappa, as_kappa, separability_fitness

logger = logging.getLogger(__name__)

METHODS = ('uniform', 'proposed')
DEFAULT_K_VALUES = (1, 3, 5)
DEFAULT_FOLD_COUNTS = (3, 5, 10)


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """Fold index per sample."""

    folds: np.ndarray
    n_folds: int
    seed: int

    def split(self, fold):
        """(train_rows, test_rows) for one fold."""
        test = self.folds == fold
        return np.flatnonzero(~test), np.flatnonzero(test)

    def fold_sizes(self):
        return np.bincount(self.folds, minlength=self.n_folds)


def derive_seed(master_seed, dataset_id, n_folds):
    """Deterministic fold seed for (master seed, dataset, fold count)."""
    digest = hashlib.sha256(f"{master_seed}:{dataset_id}:{n_folds}".encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def stratified_folds(labels, n_folds, seed):
    """
    Assign samples to folds, class by class.

    Each class (ascending label order) is shuffled with a generator seeded by
    `seed` and dealt round-robin, continuing from the fold where the previous
    class stopped. Per class, fold sizes differ by at most one.

    Raises:
        ConfigError: n_folds < 2 or n_folds > number of samples
    """
    labels = np.asarray(labels)
    if int(n_folds) != n_folds or n_folds < 2:
        raise ConfigError(f"fold count must be an integer >= 2 (got {n_folds})")
    n_folds = int(n_folds)
    if n_folds > labels.size:
        raise ConfigError(f"{n_folds} folds requested for only {labels.size} samples")

    rng = np.random.default_rng(seed)
    folds = np.empty(labels.size, dtype=int)
    offset = 0
    for cls in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == cls))
        folds[members] = (offset + np.arange(members.size)) % n_folds
        offset = (offset + members.size) % n_folds
    return FoldAssignment(folds, n_folds, seed)


def accuracy(predictions, truth):
    """Fraction of exact label matches."""
    predictions = list(predictions)
    truth = list(truth)
    if len(predictions) != len(truth):
        raise ConfigError(
            f"{len(predictions)} predictions for {len(truth)} true labels")
    if not truth:
        raise ConfigError("accuracy of an empty prediction set is undefined")
    return sum(p == t for p, t in zip(predictions, truth)) / len(truth)


@dataclass(frozen=True)
class ExperimentSpec:
    """One dataset's experiment grid."""

    dataset_id: str = 'dataset'
    k_values: tuple = DEFAULT_K_VALUES
    fold_counts: tuple = DEFAULT_FOLD_COUNTS
    norm: Norm = Norm(2.0)
    baseline_norm: Norm = Norm(2.0)
    kappa: Kappa = Kappa(0.0)
    methods: tuple = METHODS
    seed: int = 42
    preprocess: PreprocessSpec = PreprocessSpec()
    pooled: bool = True
    strict: bool = False
    fitness_fn: Callable = separability_fitness

    def __post_init__(self):
        object.__setattr__(self, 'k_values', tuple(int(k) for k in self.k_values))
        object.__setattr__(self, 'fold_counts', tuple(int(f) for f in self.fold_counts))
        object.__setattr__(self, 'norm', parse_norm(self.norm))
        object.__setattr__(self, 'baseline_norm', parse_norm(self.baseline_norm))
        object.__setattr__(self, 'kappa', as_kappa(self.kappa))
        object.__setattr__(self, 'methods', tuple(self.methods))
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ConfigError(f"k values must be positive (got {self.k_values})")
        if not self.fold_counts or any(f < 2 for f in self.fold_counts):
            raise ConfigError(f"fold counts must be >= 2 (got {self.fold_counts})")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ConfigError(f"methods must be drawn from {METHODS} (got {self.methods})")

    def norm_for(self, method):
        return self.norm if method == 'proposed' else self.baseline_norm


@dataclass
class FoldResult:
    """Outcome of one fold for every k."""

    correct: dict
    total: int
    weights: Optional[np.ndarray] = None
    errors: dict = field(default_factory=dict)


@dataclass
class CellResult:
    """One (method, k, folds) cell of the grid."""

    method: str
    k: int
    folds: int
    seed: int
    accuracy: float = float('nan')
    correct: int = 0
    total: int = 0
    fold_accuracies: tuple = ()
    fold_weights: tuple = ()
    error: Optional[str] = None

    @property
    def valid(self):
        return self.error is None


@dataclass
class EvaluationReport:
    """All cells of one dataset plus mean/sd per method."""

    dataset_id: str
    spec: ExperimentSpec
    cells: list
    summary: dict = field(default_factory=dict)

    def cell(self, method, k, folds):
        for c in self.cells:
            if (c.method, c.k, c.folds) == (method, k, folds):
                return c
        raise KeyError((method, k, folds))

    def mean(self, method):
        return self.summary[method]['mean']

    def sd(self, method):
        return self.summary[method]['sd']


def _aggregate(cells):
    values = np.array([c.accuracy for c in cells if c.valid])
    mean = float(values.mean()) if values.size else float('nan')
    sd = float(values.std(ddof=1)) if values.size > 1 else float('nan')
    return {'mean': mean, 'sd': sd, 'cells': int(values.size)}


def evaluate_fold(data, train_rows, test_rows, method, k_values, norm=Norm(2.0),
                  kappa=0.0, preprocess_spec=PreprocessSpec(), strict=False,
                  fitness_fn=separability_fitness):
    """
    Train on train_rows, predict test_rows for every k.

    Preprocessing and weights are fitted on train_rows only. A single distance
    matrix serves all k values.

    Returns:
        FoldResult; k values larger than the training set are reported in
        FoldResult.errors instead of raising
    """
    train_rows = np.asarray(train_rows, dtype=int)
    test_rows = np.asarray(test_rows, dtype=int)
    if train_rows.size == 0:
        raise DataError("fold leaves an empty training set")
    if test_rows.size == 0:
        raise DataError("fold has no test samples")

    if preprocess_spec.standardize:
        data, _ = preprocess(data, preprocess_spec, train_rows)
    train = subset(data, train_rows)
    test = subset(data, test_rows)

    usable = [k for k in k_values if k <= train.n_samples]
    errors = {k: f"k = {k} exceeds the training set size {train.n_samples}"
              for k in k_values if k > train.n_samples}
    model = fit(train, max(usable) if usable else 1, norm=norm, kappa=kappa,
                weight_mode=method, fitness_fn=fitness_fn, strict=strict)
    distances = pairwise_distance_matrix(test.features, model.features, model.spec)

    correct = {}
    for k in usable:
        predicted = [p.label for p in predictions_from_distances(model, distances, k)]
        correct[k] = int(np.sum(np.asarray(predicted) == test.labels))

    weights = None if model.spec.weights is None else np.array(model.spec.weights.values)
    return FoldResult(correct, int(test_rows.size), weights, errors)


def _run_method(spec, data, assignment, method):
    """Cells of one (method, fold count) pair, one per k."""
    n_folds = assignment.n_folds
    correct = {k: 0 for k in spec.k_values}
    fold_acc = {k: [] for k in spec.k_values}
    errors = {}
    fold_weights = []
    total = 0

    for fold in range(n_folds):
        train_rows, test_rows = assignment.split(fold)
        try:
            result = evaluate_fold(data, train_rows, test_rows, method, spec.k_values,
                                   spec.norm_for(method), spec.kappa, spec.preprocess,
                                   spec.strict, spec.fitness_fn)
        except WeightedKnnError as exc:
            for k in spec.k_values:
                errors.setdefault(k, f"fold {fold}: {exc}")
            break
        total += result.total
        fold_weights.append(result.weights)
        for k in spec.k_values:
            if k in result.errors:
                errors.setdefault(k, f"fold {fold}: {result.errors[k]}")
            else:
                correct[k] += result.correct[k]
                fold_acc[k].append(result.correct[k] / result.total)

    cells = []
    for k in spec.k_values:
        cell = CellResult(method, k, n_folds, assignment.seed)
        if k in errors:
            cell.error = errors[k]
            logger.warning("Cell %s k=%d folds=%d invalid: %s", method, k, n_folds, cell.error)
        else:
            cell.correct = correct[k]
            cell.total = total
            cell.fold_accuracies = tuple(fold_acc[k])
            cell.fold_weights = tuple(fold_weights)
            cell.accuracy = correct[k] / total if spec.pooled else float(np.mean(fold_acc[k]))
            logger.info("%s %s k=%d folds=%d accuracy=%.4f",
                        spec.dataset_id, method, k, n_folds, cell.accuracy)
        cells.append(cell)
    return cells


def cross_validate(spec, data):
    """
    Run the full grid for one dataset.

    Invalid cells (empty or single-class training folds, k too large) are
    recorded with an error message; the run continues.

    Returns:
        EvaluationReport
    """
    if spec.dataset_id == 'dataset' and data.dataset_id != 'dataset':
        spec = replace(spec, dataset_id=data.dataset_id)

    cells = []
    for n_folds in spec.fold_counts:
        seed = derive_seed(spec.seed, spec.dataset_id, n_folds)
        try:
            assignment = stratified_folds(data.labels, n_folds, seed)
        except ConfigError as exc:
            for method in spec.methods:
                for k in spec.k_values:
                    cells.append(CellResult(method, k, n_folds, seed, error=str(exc)))
            logger.warning("Fold count %d skipped: %s", n_folds, exc)
            continue
        for method in spec.methods:
            cells.extend(_run_method(spec, data, assignment, method))

    order = {m: i for i, m in enumerate(spec.methods)}
    cells.sort(key=lambda c: (order[c.method], c.k, c.folds))
    summary = {m: _aggregate([c for c in cells if c.method == m]) for m in spec.methods}
    return EvaluationReport(spec.dataset_id, spec, cells, summary)


def method_label(method, spec):
    """Column heading of a method in the text table."""
    if method == 'proposed':
        return 'KNN (Proposed Distance)'
    norm = spec.baseline_norm
    if norm == Norm(2.0):
        return 'KNN (Euclidean)'
    if norm == Norm(1.0):
        return 'KNN (Manhattan)'
    if norm.is_infinite:
        return 'KNN (Chebyshev)'
    return f"KNN (p={norm.label})"


def format_table(report):
    """Text table with one row per (k, folds), then Mean and sd rows."""
    methods = report.spec.methods
    labels = [method_label(m, report.spec) for m in methods]
    widths = [max(len(label), 10) for label in labels]

    lines = [f"Dataset: {report.dataset_id}",
             f"{'k':>3}  {'n-fold':>6}  " + '  '.join(
                 f"{label:>{w}}" for label, w in zip(labels, widths))]
    for k in report.spec.k_values:
        for i, n_folds in enumerate(report.spec.fold_counts):
            values = []
            for method, w in zip(methods, widths):
                cell = report.cell(method, k, n_folds)
                text = f"{cell.accuracy:.4f}" if cell.valid else 'n/a'
                values.append(f"{text:>{w}}")
            k_text = str(k) if i == 0 else ''
            lines.append(f"{k_text:>3}  {n_folds:>6}  " + '  '.join(values))

    for row, key, fmt in (('Mean', 'mean', '.4f'), ('sd', 'sd', '.6f')):
        values = []
        for method, w in zip(methods, widths):
            value = report.summary[method][key]
            text = 'n/a' if np.isnan(value) else format(value, fmt)
            values.append(f"{text:>{w}}")
        lines.append(f"{row:<11}  " + '  '.join(values))
    return '\n'.join(lines) + '\n'


def report_records(report):
    """One row per cell: dataset, method, k, folds, accuracy, seed, valid, error."""
    return pd.DataFrame([{
        'dataset': report.dataset_id,
        'method': c.method,
        'k': c.k,
        'folds': c.folds,
        'accuracy': c.accuracy,
        'seed': report.spec.seed,
        'fold_seed': c.seed,
        'valid': c.valid,
        'error': c.error or '',
    } for c in report.cells])


def summarize(reports):
    """
    Mean and sd per dataset and method, copied from each report.

    Returns:
        pandas.DataFrame with columns dataset, method, mean, sd, cells
    """
    reports = list(reports)
    if not reports:
        raise ConfigError("summarize needs at least one report")
    rows = []
    for report in reports:
        for method in report.spec.methods:
            stats = report.summary[method]
            rows.append({'dataset': report.dataset_id, 'method': method,
                         'mean': stats['mean'], 'sd': stats['sd'], 'cells': stats['cells']})
    return pd.DataFrame(rows)


def kappa_sweep(data, kappas, spec=None):
    """
    Proposed-method accuracy for several kappa values.

    kappa = 1 reproduces the uniform baseline.

    Returns:
        pandas.DataFrame with columns kappa, mean, sd
    """
    spec = spec or ExperimentSpec(dataset_id=data.dataset_id)
    rows = []
    for kappa in kappas:
        report = cross_validate(replace(spec, kappa=as_kappa(kappa), methods=('proposed',)), data)
        rows.append({'kappa': float(kappa), 'mean': report.mean('proposed'),
                     'sd': report.sd('proposed')})
    return pd.DataFrame(rows)


def norm_sweep(data, norms, spec=None):
    """
    Accuracy of both methods for several norms (same norm for both).

    Returns:
        pandas.DataFrame with columns p, method, mean, sd
    """
    spec = spec or ExperimentSpec(dataset_id=data.dataset_id)
    rows = []
    for norm in norms:
        norm = parse_norm(norm)
        report = cross_validate(replace(spec, norm=norm, baseline_norm=norm), data)
        for method in report.spec.methods:
            rows.append({'p': norm.label, 'method': method,
                         'mean': report.mean(method), 'sd': report.sd(method)})
    return pd.DataFrame(rows)


if __name__ == '__main__':
    # Test the grid on iris
    from datasets import default_preprocess, load_builtin

    iris = load_builtin('iris')
    report = cross_validate(ExperimentSpec(dataset_id='iris',
                                           preprocess=default_preprocess('iris')), iris)
    print(format_table(report))
    print()
    print(summarize([report]).to_string(index=False))
