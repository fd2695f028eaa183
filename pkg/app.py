"""
Flask JSON API for weighted KNN.

Routes:
    GET  /api/datasets   builtin dataset names
    POST /api/weights    fitness and weights for posted training data
    POST /api/predict    weighted KNN predictions for posted queries
    POST /api/boundary   unidistant boundary points
"""

import logging
import os
import sys
import time

from flask import Flask, jsonify, request

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from classifier import fit, predict_batch
from datasets import LabeledDataset
from errors import WeightedKnnError
from geometry import DEFAULT_RESOLUTION, unidistant_boundary
from metric import MetricSpec, WeightVector, parse_norm
from weighting import fitness_report

logger = logging.getLogger(__name__)

BUILTIN_DATASETS = ['iris', 'breast_cancer']

app = Flask(__name__)


def _training_data(payload, features_key, labels_key):
    return LabeledDataset.from_arrays(payload[features_key], payload[labels_key],
                                      payload.get('dimension_names'), 'posted')


def _error(exc):
    logger.warning("Request failed: %s", exc)
    return jsonify({'success': False, 'error': str(exc)}), 400


@app.route('/api/datasets', methods=['GET'])
def list_datasets():
    """Names accepted by datasets.load_builtin."""
    return jsonify({'datasets': BUILTIN_DATASETS})


@app.route('/api/weights', methods=['POST'])
def weights():
    """
    Fitness and weights per dimension.

    Expected JSON input:
    {
        "features": [[5.1, 3.5], [6.2, 2.9], ...],
        "labels": ["a", "b", ...],
        "kappa": 0.0,
        "dimension_names": ["x", "y"]
    }
    """
    try:
        payload = request.get_json(force=True)
        data = _training_data(payload, 'features', 'labels')
        table = fitness_report(data, float(payload.get('kappa', 0.0)))
        return jsonify({
            'success': True,
            'dimensions': table['name'].tolist(),
            'lambdas': table['lambda'].tolist(),
            'weights': table['weight'].tolist(),
        })
    except (WeightedKnnError, KeyError, TypeError, ValueError) as exc:
        return _error(exc)


@app.route('/api/predict', methods=['POST'])
def predict():
    """
    Predict labels for queries.

    Expected JSON input:
    {
        "train_features": [[0, 0], [10, 10]],
        "train_labels": ["A", "B"],
        "queries": [[1, 1]],
        "k": 1,
        "p": 2,
        "kappa": 0.0,
        "weight_mode": "proposed|uniform|explicit",
        "weights": [1.0, 1.0]
    }
    """
    try:
        payload = request.get_json(force=True)
        train = _training_data(payload, 'train_features', 'train_labels')

        start_time = time.time()
        model = fit(train, int(payload.get('k', 1)), norm=parse_norm(payload.get('p', 2)),
                    kappa=float(payload.get('kappa', 0.0)),
                    weight_mode=payload.get('weight_mode', 'proposed'),
                    weights=payload.get('weights'))
        predictions = predict_batch(model, payload['queries'])
        runtime_ms = (time.time() - start_time) * 1000

        return jsonify({
            'success': True,
            'predictions': [p.to_dict() for p in predictions],
            'weights': [float(w) for w in model.weights],
            'runtime_ms': runtime_ms,
        })
    except (WeightedKnnError, KeyError, TypeError, ValueError) as exc:
        return _error(exc)


@app.route('/api/boundary', methods=['POST'])
def boundary():
    """
    Unidistant boundary around a center.

    Expected JSON input:
    {
        "center": [0, 0],
        "radius": 1.0,
        "p": "inf",
        "weights": [1.5, 0.5],
        "resolution": 360
    }
    """
    try:
        payload = request.get_json(force=True)
        weights = payload.get('weights')
        spec = MetricSpec(parse_norm(payload.get('p', 2)),
                          WeightVector(weights) if weights is not None else None)
        sample = unidistant_boundary(payload.get('center', [0.0, 0.0]),
                                     float(payload.get('radius', 1.0)), spec,
                                     int(payload.get('resolution', DEFAULT_RESOLUTION)))
        return jsonify({
            'success': True,
            'theta': sample.thetas.tolist(),
            'points': sample.points.tolist(),
        })
    except (WeightedKnnError, KeyError, TypeError, ValueError) as exc:
        return _error(exc)


if __name__ == '__main__':
    print("\n" + "=" * 70)
    print(" " * 20 + "WEIGHTED KNN API")
    print(" " * 15 + "Listening on http://localhost:5000/api")
    print("=" * 70 + "\n")

    app.run(
        debug=True,
        use_reloader=False,
        host='0.0.0.0',
        port=5000
    )
