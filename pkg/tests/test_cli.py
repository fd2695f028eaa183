"""Tests for the command line and its run configuration."""

import json

import pandas as pd
import pytest

from cli import EXIT_DATA, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from config import RunConfig, parse_int_list, parse_weight_pairs
from errors import ConfigError


def test_unknown_flag_is_usage_error(tmp_path):
    assert main(['evaluate', '--builtin', 'iris', '--bogus', '--out', str(tmp_path)]) == EXIT_USAGE


def test_norm_below_one_is_usage_error(tmp_path, capsys):
    code = main(['evaluate', '--builtin', 'iris', '--p', '0.5', '--out', str(tmp_path)])
    assert code == EXIT_USAGE
    assert 'norm must be >= 1' in capsys.readouterr().err


def test_missing_dataset_source_is_usage_error(tmp_path):
    assert main(['evaluate', '--out', str(tmp_path)]) == EXIT_USAGE


def test_missing_file_is_data_error(tmp_path, capsys):
    code = main(['evaluate', '--data', str(tmp_path / 'absent.csv'), '--out', str(tmp_path)])
    assert code == EXIT_DATA
    assert 'file not found' in capsys.readouterr().err


def test_evaluate_builtin_iris(tmp_path, capsys):
    out = tmp_path / 'iris'
    code = main(['evaluate', '--builtin', 'iris', '--k', '1,5', '--folds', '5',
                 '--seed', '3', '--out', str(out)])
    assert code == EXIT_OK

    printed = capsys.readouterr().out
    assert printed.startswith('Dataset: iris')
    assert (out / 'report.txt').read_text(encoding='utf-8') == printed

    cells = pd.read_csv(out / 'cells.csv')
    assert len(cells) == 4
    assert set(cells['method']) == {'uniform', 'proposed'}
    assert cells['accuracy'].min() > 0.85

    config = json.loads((out / 'config.json').read_text(encoding='utf-8'))
    assert config['seed'] == 3
    assert config['k_values'] == [1, 5]
    assert config['p'] == '2'


def test_evaluate_csv(tmp_path, separable_data):
    from datasets import write_csv

    path = write_csv(separable_data, tmp_path / 'sep.csv')
    code = main(['evaluate', '--data', str(path), '--label-col', 'class', '--weight-mode',
                 'proposed', '--folds', '3', '--out', str(tmp_path / 'out')])
    assert code == EXIT_OK
    cells = pd.read_csv(tmp_path / 'out' / 'cells.csv')
    assert set(cells['method']) == {'proposed'}
    assert (cells['accuracy'] == 1.0).all()


def test_evaluate_with_every_cell_invalid(tmp_path):
    path = tmp_path / 'one_class.csv'
    path.write_text("x,class\n1,a\n2,a\n3,a\n4,a\n", encoding='utf-8')
    code = main(['evaluate', '--data', str(path), '--weight-mode', 'proposed', '--folds', '2',
                 '--k', '1', '--out', str(tmp_path / 'out')])
    assert code == EXIT_RUNTIME


def test_weights_with_kappa_one(tmp_path, capsys):
    code = main(['weights', '--builtin', 'iris', '--kappa', '1', '--out', str(tmp_path)])
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert printed.splitlines()[0] == 'dimension,name,lambda,weight'
    table = pd.read_csv(tmp_path / 'weights.csv')
    assert (table['weight'] == 1.0).all()
    assert len(table) == 4


def test_weights_favour_petal_dimensions(tmp_path):
    assert main(['weights', '--builtin', 'iris', '--out', str(tmp_path)]) == EXIT_OK
    table = pd.read_csv(tmp_path / 'weights.csv')
    assert table['weight'].sum() == pytest.approx(4.0)
    assert table['weight'].idxmax() in (2, 3)


def test_generate_is_deterministic(tmp_path, capsys):
    args = ['generate', '--generator', 'gene-like', '--n-samples', '20', '--n-dims', '30',
            '--n-informative', '4', '--seed', '9']
    assert main(args + ['--out', str(tmp_path / 'a')]) == EXIT_OK
    assert main(args + ['--out', str(tmp_path / 'b')]) == EXIT_OK
    first = (tmp_path / 'a' / 'gene_like_seed9.csv').read_bytes()
    assert first == (tmp_path / 'b' / 'gene_like_seed9.csv').read_bytes()
    assert 'gene_like_seed9.csv' in capsys.readouterr().out


def test_generate_two_class(tmp_path):
    assert main(['generate', '--n-per-class', '10', '--out', str(tmp_path)]) == EXIT_OK
    frame = pd.read_csv(tmp_path / 'two_class_seed42.csv')
    assert list(frame.columns) == ['x', 'y', 'class']
    assert len(frame) == 20


def test_boundaries_default_grid(tmp_path):
    assert main(['boundaries', '--resolution', '16', '--field', '--out', str(tmp_path)]) == EXIT_OK
    series = sorted(p.name for p in tmp_path.glob('boundary_*.csv'))
    assert len(series) == 18
    assert 'boundary_00_p1_w1-1.csv' in series
    assert 'boundary_17_pinf_w0.5-1.5.csv' in series
    combined = pd.read_csv(tmp_path / 'boundaries.csv')
    assert len(combined) == 18 * 16
    assert (tmp_path / 'distance_field.csv').exists()


def test_boundaries_zero_weight_fails_series(tmp_path, capsys):
    code = main(['boundaries', '--norms', '2,inf', '--weights', '2,0', '--out', str(tmp_path)])
    assert code == EXIT_RUNTIME
    assert 'axis 1' in capsys.readouterr().err
    assert len(list(tmp_path.glob('boundary_*.csv'))) == 1


def test_fig4_export_is_deterministic(tmp_path):
    for name in ('a', 'b'):
        assert main(['boundaries', '--fig4', '--seed', '5', '--out', str(tmp_path / name)]) == EXIT_OK
    for filename in ('fig4_scatter.csv', 'fig4_regions.csv', 'fig4_weights.csv'):
        assert ((tmp_path / 'a' / filename).read_bytes()
                == (tmp_path / 'b' / filename).read_bytes())
    weights = pd.read_csv(tmp_path / 'a' / 'fig4_weights.csv')
    assert weights['mode'].tolist() == ['uniform', 'proposed']
    proposed = weights.iloc[1]
    assert proposed['w_x'] > proposed['w_y']


def test_run_config_parsing():
    assert parse_int_list('1, 3,5', '--k') == (1, 3, 5)
    assert parse_weight_pairs('1,1;1.5,0.5') == ((1.0, 1.0), (1.5, 0.5))
    with pytest.raises(ConfigError):
        parse_int_list('1,x', '--k')
    with pytest.raises(ConfigError):
        RunConfig('boundaries', weights=((3.0, 0.0),)).validate()
    with pytest.raises(ConfigError):
        RunConfig('evaluate', builtin='iris', fold_counts=(1,)).validate()


def test_run_config_written_and_read(tmp_path):
    config = RunConfig('evaluate', builtin='iris', k_values=(3,), kappa=0.25)
    restored = RunConfig.read(config.write(tmp_path))
    assert restored == config
