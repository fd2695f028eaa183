"""Tests for the Flask JSON API."""

import math

import pytest

from app import app


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client


def test_list_datasets(client):
    response = client.get('/api/datasets')
    assert response.status_code == 200
    assert response.get_json()['datasets'] == ['iris', 'breast_cancer']


def test_weights(client):
    response = client.post('/api/weights', json={
        'features': [[0.0, 0.0], [1.0, 5.0], [10.0, 0.0], [11.0, 5.0]],
        'labels': ['A', 'A', 'B', 'B'],
        'kappa': 0.0,
        'dimension_names': ['x', 'y'],
    })
    body = response.get_json()
    assert response.status_code == 200
    assert body['success']
    assert body['dimensions'] == ['x', 'y']
    assert body['weights'] == pytest.approx([2.0, 0.0])


def test_predict(client):
    response = client.post('/api/predict', json={
        'train_features': [[0, 0], [0, 2], [5, 0]],
        'train_labels': ['A', 'A', 'B'],
        'queries': [[0, 1], [5, 1]],
        'k': 1,
        'weight_mode': 'uniform',
    })
    body = response.get_json()
    assert response.status_code == 200
    assert [p['label'] for p in body['predictions']] == ['A', 'B']
    assert body['weights'] == [1.0, 1.0]


def test_predict_rejects_bad_norm(client):
    response = client.post('/api/predict', json={
        'train_features': [[0, 0], [1, 1]],
        'train_labels': ['A', 'B'],
        'queries': [[0, 0]],
        'p': 0.5,
    })
    assert response.status_code == 400
    assert 'norm must be >= 1' in response.get_json()['error']


def test_predict_missing_field(client):
    response = client.post('/api/predict', json={'train_features': [[0, 0]], 'train_labels': ['A']})
    assert response.status_code == 400
    assert not response.get_json()['success']


def test_boundary(client):
    response = client.post('/api/boundary', json={
        'center': [0, 0], 'radius': 1.0, 'p': 2, 'weights': [1.5, 0.5], 'resolution': 8})
    body = response.get_json()
    assert response.status_code == 200
    assert len(body['points']) == 8
    assert body['points'][2][1] == pytest.approx(math.sqrt(2.0))


def test_boundary_zero_weight(client):
    response = client.post('/api/boundary', json={'p': 2, 'weights': [2.0, 0.0]})
    assert response.status_code == 400
    assert 'axis 1' in response.get_json()['error']
