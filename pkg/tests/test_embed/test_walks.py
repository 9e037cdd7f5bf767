import numpy as np
import pytest

from layersim.algos.embed.embedding import EmbedConfig
from layersim.algos.embed.walks import WalkCorpus, generate_walks, random_walk
from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import ValidationError
from tests.conftest import random_layer


def test_walks_follow_edges(small_cfg):
    layer = random_layer(40, 0.15, seed=1)
    corpus = generate_walks(layer, small_cfg)
    assert len(corpus) == 40 * small_cfg.walks_per_node
    edges = layer.edge_set()
    for walk in corpus:
        for u, v in zip(walk[:-1], walk[1:]):
            assert (min(u, v), max(u, v)) in edges


def test_walks_are_deterministic(small_cfg):
    layer = random_layer(40, 0.15, seed=1)
    assert generate_walks(layer, small_cfg) == generate_walks(layer, small_cfg)
    other = EmbedConfig(dim=8, walks_per_node=4, walk_length=8, window=3, seed=8)
    assert generate_walks(layer, other) != generate_walks(layer, small_cfg)


def test_walk_order_is_round_major(small_cfg):
    layer = random_layer(10, 0.5, seed=2)
    corpus = generate_walks(layer, small_cfg)
    starts = [int(walk[0]) for walk in corpus]
    assert starts == list(range(10)) * small_cfg.walks_per_node


def test_isolated_node_walk(small_cfg):
    layer = LayerGraph.from_edges(3, [(0, 1)])
    assert random_walk(layer, 2, 0, small_cfg).tolist() == [2]
    assert random_walk(layer, 0, 0, small_cfg).shape[0] == small_cfg.walk_length


def test_walks_on_empty_node_set(small_cfg):
    with pytest.raises(ValidationError):
        generate_walks(LayerGraph.empty(0), small_cfg)


def _backtrack_rate(layer, cfg):
    padded = generate_walks(layer, cfg).padded()
    return float(np.mean(padded[:, 2:] == padded[:, :-2]))


def test_return_parameter_biases_backtracking():
    layer = random_layer(60, 0.1, seed=3)
    base = dict(dim=8, walks_per_node=5, walk_length=12, seed=1)
    returning = _backtrack_rate(layer, EmbedConfig(return_p=0.05, **base))
    exploring = _backtrack_rate(layer, EmbedConfig(return_p=20.0, **base))
    assert returning > exploring + 0.2


def test_corpus_views():
    corpus = WalkCorpus((np.array([0, 1, 2]), np.array([2])), 4)
    assert corpus.padded().tolist() == [[0, 1, 2], [2, -1, -1]]
    assert corpus.counts().tolist() == [1, 1, 2, 0]
    with pytest.raises(ValidationError):
        WalkCorpus((np.array([5]),), 4)
