import numpy as np
import pytest

from layersim.algos.embed.embedding import EmbedConfig, EmbeddingMatrix
from layersim.algos.generate.ba import RewireParams, generate_ba, rewire
from layersim.algos.sim.jsd import jsd_distance
from layersim.algos.sim.similarity import (
    SimilarityResult,
    check_omega,
    eatsim,
    eatsim_from_embeddings,
    similarity_matrix,
)
from layersim.data.multiplex import LayerGraph, MultiplexNetwork
from layersim.utils.exceptions import ValidationError
from tests.conftest import random_layer


def test_similarity_result_combines_losses():
    result = SimilarityResult.from_losses(0.2, 0.4, 0.25, (0, 1))
    assert np.isclose(result.dissimilarity, 0.25 * 0.2 + 0.75 * 0.4)
    assert np.isclose(result.eatsim, 1 - result.dissimilarity)
    assert result.swapped().layer_pair == (1, 0)


@pytest.mark.parametrize("omega", [-0.1, 1.5, float("nan")])
def test_omega_range(omega):
    with pytest.raises(ValidationError):
        check_omega(omega)


def test_eatsim_of_a_layer_with_itself(small_cfg):
    layer = random_layer(50, 0.1, seed=1)
    result = eatsim(layer, layer, small_cfg)
    assert abs(result.eatsim - 1.0) <= 1e-9
    assert result.ped == 0.0


def test_eatsim_is_symmetric(small_cfg):
    a, b = random_layer(40, 0.15, seed=2), random_layer(40, 0.15, seed=3)
    assert np.isclose(eatsim(a, b, small_cfg).eatsim, eatsim(b, a, small_cfg).eatsim, atol=1e-9)


def test_eatsim_from_embeddings_ignores_scale():
    rng = np.random.default_rng(0)
    x, y = rng.normal(size=(30, 4)), rng.normal(size=(30, 4))
    base = eatsim_from_embeddings(EmbeddingMatrix(x), EmbeddingMatrix(y))
    scaled = eatsim_from_embeddings(EmbeddingMatrix(3 * x), EmbeddingMatrix(y))
    assert np.isclose(base.eatsim, scaled.eatsim)


def test_eatsim_rejects_unaligned_layers(small_cfg):
    with pytest.raises(ValidationError):
        eatsim(random_layer(10, 0.3, 1), random_layer(11, 0.3, 1), small_cfg)


def test_eatsim_decreases_with_rewiring(small_cfg):
    original = generate_ba(300, 2, seed=1)
    slight = rewire(original, RewireParams(0.05, seed=2))
    heavy = rewire(original, RewireParams(0.95, seed=2))
    assert eatsim(original, slight, small_cfg).eatsim > eatsim(original, heavy, small_cfg).eatsim


def test_similarity_matrix_layout(small_cfg):
    layers = tuple(random_layer(30, 0.2, seed=s) for s in range(3))
    net = MultiplexNetwork(layers, ("a", "b", "c"))
    matrix = similarity_matrix(net, small_cfg, omega=0.5)
    grid = matrix.eatsim
    assert grid.shape == (3, 3)
    assert np.array_equal(np.diag(grid), np.ones(3))
    assert np.array_equal(grid, grid.T)
    frame = matrix.to_frame()
    assert list(frame.columns) == ["layer_i", "layer_j", "ped", "aed", "D", "eatsim"]
    assert list(zip(frame["layer_i"], frame["layer_j"])) == [("a", "b"), ("a", "c"), ("b", "c")]
    assert matrix[0, 2].eatsim == grid[0, 2]


def test_jsd_distance_properties(triangle):
    a, b = random_layer(30, 0.2, seed=4), random_layer(30, 0.2, seed=5)
    assert jsd_distance(a, a) < 1e-6
    assert np.isclose(jsd_distance(a, b), jsd_distance(b, a))
    assert 0 < jsd_distance(a, b) <= 1
    with pytest.raises(ValidationError):
        jsd_distance(a, LayerGraph.empty(30))
    with pytest.raises(ValidationError):
        jsd_distance(a, triangle)


@pytest.mark.benchmark
@pytest.mark.timeout(300)
def test_identity_and_determinism_suite():
    cfg = EmbedConfig(seed=3)
    rng = np.random.default_rng(11)
    for k in range(20):
        n = 50 if k % 2 == 0 else 500
        layer = random_layer(n, float(rng.uniform(4, 10)) / n, seed=k)
        assert abs(eatsim(layer, layer, cfg).eatsim - 1.0) <= 1e-9
