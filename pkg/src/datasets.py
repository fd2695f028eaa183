"""
Dataset loading, synthetic generators and preprocessing.

Datasets are labeled feature matrices. Labels are re-encoded to 0..m-1 in
lexicographic order of their original names, which are kept for output.

Real-world data is supplied as CSV (see DATASET_SCHEMAS); iris and breast
cancer are also available offline from the copies bundled with scikit-learn.

Synthetic generators draw from numpy's default_rng (PCG64 bit generator,
standard_normal via the ziggurat method), so a seed fully determines the
generated matrix.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from sklearn.datasets import load_breast_cancer, load_iris
from sklearn.preprocessing import StandardScaler

from errors import ConfigError, DataError

logger = logging.getLogger(__name__)

LABEL_COLUMN_NAME = 'class'

# Column conventions for the real-world datasets (label column, shape, whether
# the features are z-scored before weighting: set for mixed-unit features)
DATASET_SCHEMAS = {
    'iris': {
        'columns': 'sepal_length,sepal_width,petal_length,petal_width,class',
        'label_column': 'class',
        'shape': (150, 4),
        'classes': 3,
        'standardize': False,
    },
    'breast_cancer': {
        'columns': '30 real-valued cell-nucleus features, then class (benign/malignant)',
        'label_column': 'class',
        'shape': (569, 30),
        'classes': 2,
        'standardize': True,
    },
    'diabetes': {
        'columns': 'Pregnancies,Glucose,BloodPressure,SkinThickness,Insulin,BMI,'
                   'DiabetesPedigreeFunction,Age,Outcome',
        'label_column': 'Outcome',
        'shape': (768, 8),
        'classes': 2,
        'standardize': True,
    },
    'leukemia': {
        'columns': '7129 gene expression levels, then class (ALL/AML); train and test pooled',
        'label_column': 'class',
        'shape': (72, 7129),
        'classes': 2,
        'standardize': False,
    },
    'colon': {
        'columns': '2000 gene expression levels, then class (tumor/normal)',
        'label_column': 'class',
        'shape': (62, 2000),
        'classes': 2,
        'standardize': False,
    },
}


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix with densely encoded labels."""

    features: np.ndarray
    labels: np.ndarray
    class_names: tuple
    dimension_names: tuple
    dataset_id: str = 'dataset'

    def __post_init__(self):
        features = np.array(self.features, dtype=float)
        labels = np.array(self.labels, dtype=int)
        if features.ndim != 2 or features.shape[1] == 0:
            raise DataError("features must be a non-empty two-dimensional matrix")
        if features.shape[0] == 0:
            raise DataError("dataset has no samples")
        if not np.all(np.isfinite(features)):
            raise DataError("features must be finite")
        if labels.shape != (features.shape[0],):
            raise DataError(
                f"{labels.size} labels for {features.shape[0]} samples")
        if labels.min() < 0 or labels.max() >= len(self.class_names):
            raise DataError("label codes fall outside the class alphabet")
        if len(self.dimension_names) != features.shape[1]:
            raise DataError(
                f"{len(self.dimension_names)} dimension names for {features.shape[1]} columns")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'class_names', tuple(str(c) for c in self.class_names))
        object.__setattr__(self, 'dimension_names', tuple(str(d) for d in self.dimension_names))

    @classmethod
    def from_arrays(cls, features, labels, dimension_names=None, dataset_id='dataset'):
        """
        Build a dataset from raw labels of any type.

        Labels are converted to strings and encoded in lexicographic order.
        """
        names = []
        for i, label in enumerate(labels):
            if label is None or str(label).strip() == '':
                raise DataError(f"sample {i} is unlabeled")
            names.append(str(label).strip())
        class_names = sorted(set(names))
        index = {name: code for code, name in enumerate(class_names)}
        codes = np.array([index[name] for name in names], dtype=int)

        features = np.asarray(features, dtype=float)
        if dimension_names is None:
            width = features.shape[1] if features.ndim == 2 else 0
            dimension_names = [f"f{j}" for j in range(width)]
        return cls(features, codes, tuple(class_names), tuple(dimension_names), dataset_id)

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_dims(self):
        return self.features.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)

    def class_counts(self):
        """Number of samples per class code (length n_classes)."""
        return np.bincount(self.labels, minlength=self.n_classes)

    def label_names(self):
        """Original class name for every row."""
        return [self.class_names[code] for code in self.labels]

    def with_features(self, features):
        """Same labels and metadata with a replaced feature matrix."""
        return LabeledDataset(features, self.labels, self.class_names,
                              self.dimension_names, self.dataset_id)

    def __repr__(self):
        return (f"LabeledDataset({self.dataset_id}, {self.n_samples}x{self.n_dims}, "
                f"{self.n_classes} classes)")


def subset(data, rows):
    """Rows of a dataset, keeping the full class alphabet."""
    rows = np.asarray(rows, dtype=int)
    if rows.size == 0:
        raise DataError("subset is empty")
    return LabeledDataset(data.features[rows], data.labels[rows], data.class_names,
                          data.dimension_names, data.dataset_id)


def _resolve_label_column(columns, label_column):
    """Map a label column name or (possibly negative) index onto a column."""
    if isinstance(label_column, str) and label_column in columns:
        return label_column
    if isinstance(label_column, str):
        text = label_column.strip()
        if text.lstrip('-').isdigit():
            label_column = int(text)
        else:
            raise DataError(f"label column {label_column!r} not found in {list(columns)}")
    try:
        return columns[int(label_column)]
    except IndexError:
        raise DataError(
            f"label column index {label_column} out of range for {len(columns)} columns") from None


def load_csv(filepath, label_column=-1, has_header=True, dataset_id=None):
    """
    Load a labeled dataset from a comma-separated file.

    Args:
        filepath: Path to a UTF-8 CSV file
        label_column: Column name, or zero-based index (negative counts from the end)
        has_header: Whether the first line holds column names
        dataset_id: Identifier for reports (default: file stem)

    Returns:
        LabeledDataset with row order preserved

    Raises:
        DataError: missing file, duplicate header names, ragged rows,
            empty label, or a feature cell that is not a finite number
    """
    path = Path(filepath)
    if not path.is_file():
        raise DataError(f"file not found: {path}")

    if has_header:
        with open(path, 'r', encoding='utf-8') as f:
            header = [name.strip() for name in f.readline().rstrip('\r\n').split(',')]
        duplicates = sorted({name for name in header if header.count(name) > 1})
        if duplicates:
            raise DataError(f"duplicate header names in {path}: {duplicates}")

    try:
        df = pd.read_csv(path, header=0 if has_header else None, dtype=str,
                         keep_default_na=False, skipinitialspace=True, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise DataError(f"file is empty: {path}") from None
    except pd.errors.ParserError as exc:
        raise DataError(f"ragged rows in {path}: {exc}") from None

    if df.empty:
        raise DataError(f"no data rows in {path}")

    first_line = 2 if has_header else 1
    short_rows = df.isna().any(axis=1)
    if short_rows.any():
        row = int(np.flatnonzero(short_rows.to_numpy())[0])
        raise DataError(f"ragged rows in {path}: line {row + first_line} has too few fields")

    if not has_header:
        df.columns = [f"f{j}" for j in range(df.shape[1])]
    columns = list(df.columns)
    label_name = _resolve_label_column(columns, label_column)
    feature_names = [c for c in columns if c != label_name]
    if not feature_names:
        raise DataError(f"{path} has no feature columns")

    labels = df[label_name].str.strip()
    empty = labels == ''
    if empty.any():
        row = int(np.flatnonzero(empty.to_numpy())[0])
        raise DataError(f"unlabeled sample at line {row + first_line} of {path}")

    values = df[feature_names].apply(lambda col: pd.to_numeric(col.str.strip(), errors='coerce'))
    matrix = values.to_numpy(dtype=float)
    bad = ~np.isfinite(matrix)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        raw = df[feature_names[col]].iloc[row]
        raise DataError(
            f"cannot parse {raw!r} as a number at line {row + first_line}, "
            f"column {feature_names[col]!r} of {path}")

    data = LabeledDataset.from_arrays(matrix, labels.tolist(), feature_names,
                                      dataset_id or path.stem)
    logger.info("Loaded %s: %d samples, %d dimensions, %d classes",
                path, data.n_samples, data.n_dims, data.n_classes)
    return data


def write_csv(data, filepath):
    """Write a dataset as CSV with a header: dimension names, then 'class'."""
    label_name = LABEL_COLUMN_NAME
    if label_name in data.dimension_names:
        label_name = 'label'
    df = pd.DataFrame(data.features, columns=list(data.dimension_names))
    df[label_name] = data.label_names()
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    return path


def load_builtin(name):
    """
    Load one of the datasets bundled with scikit-learn ('iris', 'breast_cancer').

    No network access is needed.
    """
    loaders = {'iris': load_iris, 'breast_cancer': load_breast_cancer}
    if name not in loaders:
        raise DataError(f"unknown builtin dataset {name!r}; choose from {sorted(loaders)}")
    bunch = loaders[name]()
    labels = [bunch.target_names[t] for t in bunch.target]
    return LabeledDataset.from_arrays(bunch.data, labels, list(bunch.feature_names), name)


def synthetic_two_class(n_per_class=100, x_spread=4.0, y_spread=1.0, separation=8.0, seed=42):
    """
    Two Gaussian blobs in the plane, separated along x.

    Class '0' is centered at (-separation/2, 0) and class '1' at
    (+separation/2, 0); both have per-axis standard deviations
    (x_spread, y_spread).
    """
    if int(n_per_class) != n_per_class or n_per_class < 1:
        raise ConfigError(f"n_per_class must be a positive integer (got {n_per_class})")
    if not (x_spread > 0 and y_spread > 0):
        raise ConfigError("spreads must be positive")
    if not np.isfinite(separation):
        raise ConfigError("separation must be finite")

    n = int(n_per_class)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((2 * n, 2)) * np.array([x_spread, y_spread])
    centers = np.repeat(np.array([[-separation / 2.0, 0.0], [separation / 2.0, 0.0]]), n, axis=0)
    labels = ['0'] * n + ['1'] * n
    return LabeledDataset.from_arrays(centers + noise, labels, ['x', 'y'],
                                      f"two_class_seed{seed}")


def synthetic_gene_like(n_samples=60, n_dims=500, n_informative=20, seed=42, shift=1.0):
    """
    Two-class, high-dimension / low-sample data resembling gene expression.

    Every entry is standard normal noise; the first n_informative dimensions
    are additionally shifted by -shift/2 (class '0') or +shift/2 (class '1').
    Classes are balanced (class '0' gets the extra sample when n is odd).
    """
    if int(n_samples) != n_samples or n_samples < 4:
        raise ConfigError(f"n_samples must be an integer >= 4 (got {n_samples})")
    if int(n_dims) != n_dims or n_dims < 1:
        raise ConfigError(f"n_dims must be a positive integer (got {n_dims})")
    if int(n_informative) != n_informative or not 0 <= n_informative <= n_dims:
        raise ConfigError(
            f"n_informative must be between 0 and n_dims={n_dims} (got {n_informative})")

    n_samples, n_dims, n_informative = int(n_samples), int(n_dims), int(n_informative)
    rng = np.random.default_rng(seed)
    n_first = n_samples - n_samples // 2
    codes = np.array([0] * n_first + [1] * (n_samples - n_first))
    features = rng.standard_normal((n_samples, n_dims))
    features[:, :n_informative] += np.where(codes == 1, shift / 2.0, -shift / 2.0)[:, None]
    return LabeledDataset.from_arrays(features, [str(c) for c in codes],
                                      [f"g{j}" for j in range(n_dims)],
                                      f"gene_like_seed{seed}")


@dataclass(frozen=True)
class PreprocessSpec:
    """Preprocessing switches; standardize = z-score per dimension."""

    standardize: bool = False


def default_preprocess(dataset_id):
    """
    Preprocessing a dataset is evaluated with by default.

    Args:
        dataset_id: Key of DATASET_SCHEMAS; any other id (synthetic data,
            ad-hoc CSVs) gets no preprocessing

    Returns:
        PreprocessSpec
    """
    schema = DATASET_SCHEMAS.get(dataset_id, {})
    return PreprocessSpec(standardize=schema.get('standardize', False))


@dataclass(eq=False)
class FittedTransform:
    """Transform fitted on a subset of rows, with its inverse."""

    scaler: Optional[StandardScaler] = None
    constant_dims: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def transform(self, features):
        if self.scaler is None:
            return np.array(features, dtype=float)
        out = self.scaler.transform(np.asarray(features, dtype=float))
        out[:, self.constant_dims] = 0.0
        return out

    def inverse_transform(self, features):
        if self.scaler is None:
            return np.array(features, dtype=float)
        return self.scaler.inverse_transform(np.asarray(features, dtype=float))


def preprocess(data, spec, fit_rows):
    """
    Fit a preprocessing transform on fit_rows and apply it to every row.

    Zero-variance dimensions (on the fit rows) map to all zeros.

    Returns:
        (transformed LabeledDataset, FittedTransform)
    """
    fit_rows = np.asarray(fit_rows, dtype=int)
    if fit_rows.size == 0:
        raise DataError("cannot fit preprocessing on an empty set of rows")
    if not spec.standardize:
        return data, FittedTransform()

    scaler = StandardScaler().fit(data.features[fit_rows])
    transform = FittedTransform(scaler, scaler.var_ == 0)
    return data.with_features(transform.transform(data.features)), transform


if __name__ == '__main__':
    # Test loading
    for name in ('iris', 'breast_cancer'):
        data = load_builtin(name)
        print(f"Loaded {data}")
        print(f"  Classes: {list(data.class_names)}")
        print(f"  Class counts: {data.class_counts().tolist()}")
        print(f"  Default preprocessing: {default_preprocess(name)}")

    gene_like = synthetic_gene_like()
    print(f"\nGenerated {gene_like}")
    print(f"  First dimensions: {', '.join(gene_like.dimension_names[:5])}")
