"""
Command line for weighted KNN experiments.

Subcommands:
    evaluate    Cross-validate uniform vs. fitness-weighted KNN on a dataset
    weights     Print fitness and weight per dimension
    boundaries  Export unidistant boundary points (and the --fig4 overlay)
    generate    Write a synthetic dataset

Exit codes: 0 success, 1 usage/configuration, 2 data, 3 runtime.

Example:
    python src/cli.py evaluate --builtin iris --out results/iris
"""

import argparse
import logging
import sys
from itertools import product
from pathlib import Path

import pandas as pd

from classifier import fit
from config import GENERATORS, WEIGHT_MODE_CHOICES, RunConfig
from datasets import (PreprocessSpec, load_builtin, load_csv, preprocess,
                      synthetic_gene_like, synthetic_two_class, write_csv)
from errors import ConfigError, DataError, GeometryError, WeightedKnnError
from evaluation import ExperimentSpec, cross_validate, format_table, report_records
from geometry import (boundaries_to_frame, default_grid, distance_field, knn_region,
                      unidistant_boundary)
from metric import MetricSpec, WeightVector, parse_norm
from weighting import fitness_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that exits with EXIT_USAGE on bad arguments."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser):
    parser.add_argument('--seed', type=int, help='master random seed (default: 42)')
    parser.add_argument('--out', help='output directory (default: results)')
    parser.add_argument('--verbose', action='store_true', help='log progress')
    parser.add_argument('--debug', action='store_true', help='log everything')


def _add_dataset(parser):
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--data', help='CSV file with one label column')
    source.add_argument('--builtin', choices=['iris', 'breast_cancer'],
                        help='dataset bundled with scikit-learn')
    parser.add_argument('--label-col', dest='label_col',
                        help='label column name or zero-based index (default: last)')
    parser.add_argument('--no-header', dest='has_header', action='store_false',
                        help='the CSV has no header line')
    parser.add_argument('--standardize', action='store_true',
                        help='z-score features using training-fold statistics')


def _add_generator(parser):
    parser.add_argument('--n-per-class', dest='n_per_class', type=int)
    parser.add_argument('--x-spread', dest='x_spread', type=float)
    parser.add_argument('--y-spread', dest='y_spread', type=float)
    parser.add_argument('--separation', type=float)


def build_parser():
    parser = UsageParser(prog='cli.py', description='Weighted Minkowski KNN experiments')
    sub = parser.add_subparsers(dest='command', required=True)

    evaluate = sub.add_parser('evaluate', help='cross-validate both methods')
    _add_common(evaluate)
    _add_dataset(evaluate)
    evaluate.add_argument('--k', dest='k_values', help='neighbor counts (default: 1,3,5)')
    evaluate.add_argument('--folds', dest='fold_counts', help='fold counts (default: 3,5,10)')
    evaluate.add_argument('--p', help="norm of the proposed method: number >= 1 or 'inf' (default: 2)")
    evaluate.add_argument('--kappa', type=float, help='weighting constant in [0, 1] (default: 0)')
    evaluate.add_argument('--weight-mode', dest='weight_mode', choices=WEIGHT_MODE_CHOICES)
    evaluate.add_argument('--per-fold', dest='pooled', action='store_false',
                          help='average per-fold accuracies instead of pooling')
    evaluate.add_argument('--strict', action='store_true',
                          help='fail cells with all-zero fitness instead of using uniform weights')

    weights = sub.add_parser('weights', help='print fitness and weight per dimension')
    _add_common(weights)
    _add_dataset(weights)
    weights.add_argument('--kappa', type=float)
    weights.add_argument('--strict', action='store_true')

    boundaries = sub.add_parser('boundaries', help='export unidistant boundary points')
    _add_common(boundaries)
    boundaries.add_argument('--p', help='single norm (overrides the default grid)')
    boundaries.add_argument('--norms', help="comma-separated norms, e.g. '1,2,inf'")
    boundaries.add_argument('--weights', help="weight pairs, e.g. '1,1;1.5,0.5'")
    boundaries.add_argument('--radius', type=float, help='common distance D (default: 1)')
    boundaries.add_argument('--center', help='boundary center x,y (default: 0,0)')
    boundaries.add_argument('--resolution', type=int, help='points per boundary (default: 360)')
    boundaries.add_argument('--field', action='store_true', help='also write distance_field.csv')
    boundaries.add_argument('--fig4', action='store_true',
                            help='synthetic scatter with uniform and weighted KNN regions')
    boundaries.add_argument('--query', help='query point x,y for --fig4 (default: 0,0)')
    boundaries.add_argument('--k', dest='k_values', help='neighbors for --fig4 (largest is used)')
    boundaries.add_argument('--kappa', type=float)
    _add_generator(boundaries)

    generate = sub.add_parser('generate', help='write a synthetic dataset')
    _add_common(generate)
    generate.add_argument('--generator', choices=GENERATORS)
    _add_generator(generate)
    generate.add_argument('--n-samples', dest='n_samples', type=int)
    generate.add_argument('--n-dims', dest='n_dims', type=int)
    generate.add_argument('--n-informative', dest='n_informative', type=int)
    generate.add_argument('--shift', type=float)
    return parser


def configure_logging(verbose=False, debug=False):
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)


def _load_dataset(config):
    if config.builtin:
        return load_builtin(config.builtin)
    return load_csv(config.data, config.label_col, config.has_header)


def cmd_evaluate(config):
    """Cross-validate both methods and write report.txt, cells.csv and config.json."""
    data = _load_dataset(config)
    config.p = config.norm().label
    spec = ExperimentSpec(
        dataset_id=data.dataset_id,
        k_values=config.k_values,
        fold_counts=config.fold_counts,
        norm=config.norm(),
        kappa=config.kappa,
        methods=config.methods(),
        seed=config.seed,
        preprocess=PreprocessSpec(config.standardize),
        pooled=config.pooled,
        strict=config.strict,
    )
    report = cross_validate(spec, data)

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    table = format_table(report)
    (out / 'report.txt').write_text(table, encoding='utf-8')
    report_records(report).to_csv(out / 'cells.csv', index=False)
    config.write(out)
    print(table, end='')

    if not any(cell.valid for cell in report.cells):
        print("error: every cell of the grid is invalid", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_weights(config):
    """Print dimension, name, lambda, weight as CSV (fitted on the full dataset)."""
    data = _load_dataset(config)
    if config.standardize:
        data, _ = preprocess(data, PreprocessSpec(True), range(data.n_samples))
    table = fitness_report(data, config.kappa, strict=config.strict)
    table.to_csv(sys.stdout, index=False)
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    table.to_csv(out / 'weights.csv', index=False)
    config.write(out)
    return EXIT_OK


def _weight_tag(weights):
    return '-'.join(f"{w:g}" for w in weights.values)


def _export_fig4(config, out):
    data = synthetic_two_class(config.n_per_class, config.x_spread, config.y_spread,
                               config.separation, config.seed)
    k = max(config.k_values)
    modes = ('uniform', 'proposed')
    models = [fit(data, k, config.norm(), config.kappa, mode) for mode in modes]
    regions = [knn_region(model, config.query, config.resolution) for model in models]

    write_csv(data, out / 'fig4_scatter.csv')
    boundaries_to_frame(regions, series_ids=modes).to_csv(out / 'fig4_regions.csv', index=False)
    pd.DataFrame({
        'mode': modes,
        'w_x': [model.weights[0] for model in models],
        'w_y': [model.weights[1] for model in models],
        'radius': [region.radius for region in regions],
    }).to_csv(out / 'fig4_weights.csv', index=False)
    return EXIT_OK


def cmd_boundaries(config):
    """Write one CSV per (norm, weights) pair plus boundaries.csv with every series."""
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    config.write(out)
    if config.fig4:
        return _export_fig4(config, out)

    default_norms, default_weights = default_grid()
    if config.norms:
        norms = [parse_norm(n) for n in config.norms]
    elif config.p is not None:
        norms = [config.norm()]
    else:
        norms = default_norms
    weight_list = [WeightVector(w) for w in config.weights] if config.weights else default_weights

    samples, ids, fields, failures = [], [], [], 0
    for series_id, (norm, weights) in enumerate(product(norms, weight_list)):
        spec = MetricSpec(norm, weights)
        try:
            sample = unidistant_boundary(config.center, config.radius, spec, config.resolution)
        except GeometryError as exc:
            failures += 1
            print(f"error: series {series_id} ({spec.describe()}): {exc}", file=sys.stderr)
            continue
        samples.append(sample)
        ids.append(series_id)
        name = f"boundary_{series_id:02d}_p{norm.label}_w{_weight_tag(weights)}.csv"
        boundaries_to_frame([sample], [series_id]).to_csv(out / name, index=False)
        if config.field:
            frame = distance_field(config.center, 1.5 * config.radius, 41, spec)
            frame.insert(0, 'series_id', series_id)
            fields.append(frame)

    boundaries_to_frame(samples, ids).to_csv(out / 'boundaries.csv', index=False)
    if fields:
        pd.concat(fields, ignore_index=True).to_csv(out / 'distance_field.csv', index=False)
    logger.info("Wrote %d boundaries to %s", len(samples), out)
    return EXIT_RUNTIME if failures else EXIT_OK


def cmd_generate(config):
    """Write a synthetic dataset CSV (two-class or gene-like)."""
    if config.generator == 'two-class':
        data = synthetic_two_class(config.n_per_class, config.x_spread, config.y_spread,
                                   config.separation, config.seed)
    else:
        data = synthetic_gene_like(config.n_samples, config.n_dims, config.n_informative,
                                   config.seed, config.shift)
    out = Path(config.out)
    path = write_csv(data, out / f"{config.generator.replace('-', '_')}_seed{config.seed}.csv")
    config.write(out)
    print(path)
    return EXIT_OK


COMMAND_HANDLERS = {
    'evaluate': cmd_evaluate,
    'weights': cmd_weights,
    'boundaries': cmd_boundaries,
    'generate': cmd_generate,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(args.verbose, args.debug)
    try:
        config = RunConfig.from_namespace(args).validate()
        return COMMAND_HANDLERS[config.command](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except WeightedKnnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:
        logger.exception("Unexpected failure")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
