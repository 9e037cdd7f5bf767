import numpy as np
import pytest
import torch
from torchmetrics import MeanMetric

from layersim.algos.embed.embedding import (
    EmbedConfig,
    EmbeddingMatrix,
    initial_vectors,
    load_embedding,
    save_embedding,
)
from layersim.algos.embed.loss import negative_sampling_loss
from layersim.algos.embed.skipgram import (
    LOSS_METRIC,
    embed_layer,
    fit_skipgram,
    skipgram_objective,
    skipgram_pairs,
    train_skipgram,
)
from layersim.algos.embed.walks import WalkCorpus, generate_walks
from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import NumericError, ParseError, ValidationError
from layersim.utils.metric import MetricAggregator
from tests.conftest import random_layer


@pytest.mark.parametrize(
    "kwargs",
    [dict(dim=1), dict(walk_length=1), dict(window=0), dict(return_p=0), dict(epochs=-1), dict(batch_size=0)],
)
def test_embed_config_validation(kwargs):
    with pytest.raises(ValidationError):
        EmbedConfig(**kwargs)


def test_embed_config_defaults():
    cfg = EmbedConfig()
    assert (cfg.dim, cfg.walks_per_node, cfg.walk_length, cfg.window) == (32, 10, 10, 10)
    assert cfg.is_first_order


def test_skipgram_pairs_counts():
    corpus = WalkCorpus((np.array([0, 1, 2, 3]),), 4)
    centers, contexts = skipgram_pairs(corpus, window=2)
    # 3 pairs at distance 1 and 2 at distance 2, in both directions
    assert centers.shape[0] == contexts.shape[0] == 10
    pairs = set(zip(centers.tolist(), contexts.tolist()))
    assert (0, 2) in pairs and (2, 0) in pairs and (0, 3) not in pairs


def test_negative_sampling_loss_reductions():
    positive = torch.tensor([0.0, 1.0])
    negative = torch.zeros(2, 3)
    per_pair = negative_sampling_loss(positive, negative, reduction="none")
    assert per_pair.shape == (2,)
    assert torch.isclose(negative_sampling_loss(positive, negative), per_pair.sum())
    assert torch.isclose(negative_sampling_loss(positive, negative, reduction="mean"), per_pair.mean())
    masked = negative_sampling_loss(positive, negative, torch.zeros(2, 3, dtype=torch.bool), reduction="none")
    assert torch.allclose(masked, -torch.nn.functional.logsigmoid(positive))
    with pytest.raises(ValueError):
        negative_sampling_loss(positive, negative, reduction="max")


def test_embed_layer_is_bit_identical(small_cfg):
    layer = random_layer(50, 0.1, seed=4)
    first, second = embed_layer(layer, small_cfg), embed_layer(layer, small_cfg)
    assert first.vectors.shape == (50, small_cfg.dim)
    assert np.array_equal(first.vectors, second.vectors)
    assert first.config_hash == second.config_hash != ""


def test_embedding_depends_on_seed(small_cfg):
    layer = random_layer(50, 0.1, seed=4)
    other = EmbedConfig(dim=8, walks_per_node=4, walk_length=8, window=3, epochs=2, batch_size=64, seed=8)
    assert not np.array_equal(embed_layer(layer, small_cfg).vectors, embed_layer(layer, other).vectors)


def test_training_lowers_the_objective(small_cfg):
    layer = random_layer(50, 0.1, seed=4)
    corpus = generate_walks(layer, small_cfg)
    untrained = fit_skipgram(corpus, 50, EmbedConfig(dim=8, walks_per_node=4, walk_length=8, window=3, epochs=0))
    trained = fit_skipgram(
        corpus, 50, EmbedConfig(dim=8, walks_per_node=4, walk_length=8, window=3, epochs=5, batch_size=64)
    )
    assert skipgram_objective(trained, corpus, small_cfg) < skipgram_objective(untrained, corpus, small_cfg)


def test_zero_epochs_keeps_initialization(small_cfg):
    layer = random_layer(20, 0.2, seed=5)
    cfg = EmbedConfig(dim=8, walks_per_node=2, walk_length=4, window=2, epochs=0, seed=3)
    assert np.array_equal(embed_layer(layer, cfg).vectors, initial_vectors(20, cfg))


def test_isolated_nodes_keep_initialization(small_cfg):
    layer = LayerGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0)])
    vectors = embed_layer(layer, small_cfg).vectors
    init = initial_vectors(6, small_cfg)
    assert np.array_equal(vectors[4:], init[4:])
    assert not np.array_equal(vectors[:4], init[:4])


def test_epoch_callback(small_cfg):
    layer = random_layer(30, 0.2, seed=6)
    aggregator = MetricAggregator({LOSS_METRIC: MeanMetric()})
    seen = []
    corpus = generate_walks(layer, small_cfg)
    train_skipgram(corpus, 30, small_cfg, aggregator=aggregator, on_epoch_end=lambda e, m: seen.append((e, m)))
    assert [epoch for epoch, _ in seen] == list(range(small_cfg.epochs))
    assert all(np.isfinite(metrics[LOSS_METRIC]) for _, metrics in seen)


def test_train_rejects_mismatched_corpus(small_cfg):
    with pytest.raises(ValidationError):
        train_skipgram(WalkCorpus((np.array([0, 1]),), 3), 4, small_cfg)
    with pytest.raises(ValidationError):
        train_skipgram(WalkCorpus((), 3), 3, small_cfg)


def test_embedding_matrix_rejects_non_finite():
    with pytest.raises(NumericError):
        EmbeddingMatrix(np.array([[0.0, np.nan]]))
    with pytest.raises(ValidationError):
        EmbeddingMatrix(np.zeros(3))


def test_save_and_load_embedding(tmp_path, small_cfg):
    embedding = embed_layer(random_layer(25, 0.2, seed=7), small_cfg, layer_id=2)
    path = save_embedding(embedding, tmp_path / "layer.emb")
    loaded = load_embedding(path)
    assert np.array_equal(loaded.vectors, embedding.vectors)
    assert (loaded.layer_id, loaded.seed, loaded.config_hash) == (2, small_cfg.seed, embedding.config_hash)


def test_load_embedding_checks_header(tmp_path):
    missing = tmp_path / "missing_header.emb"
    missing.write_text("0.1 0.2\n")
    with pytest.raises(ParseError):
        load_embedding(missing)
    wrong_shape = tmp_path / "wrong_shape.emb"
    wrong_shape.write_text("# n=2 d=2 seed=0 layer=0 config_hash=-\n0.1 0.2\n")
    with pytest.raises(ParseError):
        load_embedding(wrong_shape)
