import numpy as np
import pytest
from scipy.stats import ortho_group

from layersim.algos.sim.alignment import procrustes_align
from layersim.algos.sim.loss import aed_loss, euclidean_distance, ped_loss, rescale_rms
from layersim.data.multiplex import NodeSet
from layersim.utils.exceptions import NumericError, ValidationError


def test_euclidean_distance():
    assert euclidean_distance(np.array([0.0, 0.0]), np.array([3.0, 4.0])) == 5.0
    with pytest.raises(ValidationError):
        euclidean_distance(np.zeros(2), np.zeros(3))


def test_rescale_rms_has_unit_rms_row_norm():
    x = np.random.default_rng(0).normal(size=(30, 4)) * 7.0
    scaled = rescale_rms(x)
    assert np.isclose(np.sqrt(np.mean(np.sum(scaled**2, axis=1))), 1.0)
    with pytest.raises(NumericError):
        rescale_rms(np.zeros((3, 2)))


def test_ped_of_identical_and_rotated_embeddings():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(40, 5))
    assert ped_loss(x, x) == 0.0
    rotation = ortho_group.rvs(5, random_state=2)
    assert ped_loss(x, x @ rotation) < 1e-12


def test_ped_known_value():
    xa = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    xb = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    # pair distances: (1, 1, sqrt 2) vs (2, 1, sqrt 5)
    expected = (1.0 + 0.0 + (np.sqrt(5) - np.sqrt(2))) / 3
    assert np.isclose(ped_loss(xa, xb), expected)


def test_ped_needs_two_nodes_and_equal_shapes():
    with pytest.raises(ValidationError):
        ped_loss(np.zeros((1, 2)), np.zeros((1, 2)))
    with pytest.raises(ValidationError):
        ped_loss(np.zeros((3, 2)), np.zeros((3, 3)))


def test_sampled_ped_estimates_exact_value():
    rng = np.random.default_rng(3)
    xa, xb = rng.normal(size=(60, 4)), rng.normal(size=(60, 4))
    exact = ped_loss(xa, xb)
    estimate = ped_loss(xa, xb, sample_pairs=50_000, seed=1)
    assert abs(estimate - exact) < 0.05 * exact
    assert ped_loss(xa, xb, sample_pairs=100, seed=1) == ped_loss(xa, xb, sample_pairs=100, seed=1)
    with pytest.raises(ValidationError):
        ped_loss(xa, xb, sample_pairs=0)


def test_aed_of_rotation_related_matrices():
    rng = np.random.default_rng(4)
    for k in range(10):
        x = rng.normal(size=(50, 6))
        rotation = ortho_group.rvs(6, random_state=k)
        assert aed_loss(x @ rotation, x) <= 1e-8


def test_aed_known_value():
    # the identity is the optimal rotation, leaving each anchor at distance 1
    assert aed_loss(np.eye(2), 2.0 * np.eye(2)) == pytest.approx(1.0)


def test_aed_with_anchors():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(20, 3))
    y = x.copy()
    y[10:] += 5.0
    anchors = NodeSet(range(10), 20)
    assert aed_loss(x, y, anchors=anchors) < 1e-8
    assert aed_loss(x, y) > 0.1
    with pytest.raises(ValidationError):
        aed_loss(x, y, anchors=NodeSet.empty(20))
    with pytest.raises(ValidationError):
        aed_loss(x, y, anchors=NodeSet([0], 5))


def test_procrustes_rotation_is_orthogonal():
    rng = np.random.default_rng(6)
    result = procrustes_align(rng.normal(size=(20, 4)), rng.normal(size=(20, 4)))
    assert np.allclose(result.rotation @ result.rotation.T, np.eye(4))


def test_procrustes_rejects_bad_input():
    with pytest.raises(ValidationError):
        procrustes_align(np.zeros((3, 2)), np.zeros((4, 2)))
    with pytest.raises(NumericError):
        procrustes_align(np.full((3, 2), np.inf), np.zeros((3, 2)))


@pytest.mark.timeout(60)
def test_procrustes_beats_random_orthogonal_maps():
    rng = np.random.default_rng(7)
    for pair in range(100):
        xa, xb = rng.normal(size=(20, 4)), rng.normal(size=(20, 4))
        residual = procrustes_align(xa, xb).residual
        candidates = ortho_group.rvs(4, size=100, random_state=pair)
        assert all(residual <= np.linalg.norm(xa @ q - xb) + 1e-12 for q in candidates)
