import os
import sys

import numpy as np
import pytest

ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, ROOT)

from datasets import LabeledDataset  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def separable_data():
    """Two 2-D clusters 100 units apart, 12 samples each."""
    gen = np.random.default_rng(7)
    a = gen.normal(0.0, 1.0, size=(12, 2))
    b = gen.normal(0.0, 1.0, size=(12, 2)) + np.array([100.0, 100.0])
    return LabeledDataset.from_arrays(np.vstack([a, b]), ['A'] * 12 + ['B'] * 12,
                                      ['x', 'y'], 'separable')


@pytest.fixture
def tiny_csv(tmp_path):
    path = tmp_path / 'tiny.csv'
    path.write_text("x,y,class\n1.0,2.0,b\n3.5,4.0,a\n-1,0,b\n", encoding='utf-8')
    return path
