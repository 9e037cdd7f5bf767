import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import torch
from torch.optim import SGD

from layersim.algos.embed.embedding import (
    OBJECTIVE_STREAM,
    TRAIN_STREAM,
    EmbedConfig,
    EmbeddingMatrix,
    config_hash,
    initial_vectors,
)
from layersim.algos.embed.loss import negative_sampling_loss
from layersim.algos.embed.walks import WalkCorpus, generate_walks
from layersim.data.multiplex import LayerGraph
from layersim.models.models import SkipGram
from layersim.utils.exceptions import ValidationError
from layersim.utils.metric import MetricAggregator
from layersim.utils.utils import polynomial_decay, torch_generator

LOSS_METRIC = "Loss/skipgram_loss"


def skipgram_pairs(corpus: WalkCorpus, window: int) -> Tuple[torch.Tensor, torch.Tensor]:
    """All (center, context) pairs at distance `1..window` inside each walk, both directions."""
    padded = corpus.padded()
    centers, contexts = [], []
    for offset in range(1, min(window, max(padded.shape[1] - 1, 0)) + 1):
        left, right = padded[:, :-offset], padded[:, offset:]
        valid = (left >= 0) & (right >= 0)
        centers.extend([left[valid], right[valid]])
        contexts.extend([right[valid], left[valid]])
    if not centers:
        empty = torch.empty(0, dtype=torch.long)
        return empty, empty
    return torch.from_numpy(np.concatenate(centers)), torch.from_numpy(np.concatenate(contexts))


def noise_distribution(corpus: WalkCorpus) -> torch.Tensor:
    """Unigram counts raised to the 3/4 power."""
    return torch.from_numpy(corpus.counts().astype(np.float64)) ** 0.75


def _check_corpus(corpus: WalkCorpus, n_nodes: int) -> None:
    if len(corpus) == 0:
        raise ValidationError("Cannot train on an empty walk corpus")
    if corpus.n_nodes != n_nodes:
        raise ValidationError(f"The corpus spans {corpus.n_nodes} nodes, expected {n_nodes}")


def fit_skipgram(
    corpus: WalkCorpus,
    n_nodes: int,
    cfg: EmbedConfig,
    aggregator: Optional[MetricAggregator] = None,
    on_epoch_end: Optional[Callable[[int, Dict[str, float]], None]] = None,
) -> SkipGram:
    """Train a skip-gram model with negative sampling on the corpus.

    Pairs are visited in a fresh seeded order every epoch, `batch_size` pairs per SGD step, with a
    learning rate decaying linearly from `initial_lr` to `initial_lr / 100`. Training is sequential,
    so the result is a pure function of the corpus and `cfg`.
    """
    _check_corpus(corpus, n_nodes)
    model = SkipGram(n_nodes, cfg.dim, torch.from_numpy(initial_vectors(n_nodes, cfg)), dtype=torch.float64)
    centers, contexts = skipgram_pairs(corpus, cfg.window)
    n_pairs = centers.shape[0]
    if cfg.epochs == 0 or n_pairs == 0:
        return model

    noise = noise_distribution(corpus)
    generator = torch_generator(cfg.seed, TRAIN_STREAM)
    optimizer = SGD(model.parameters(), lr=cfg.initial_lr)
    steps_per_epoch = math.ceil(n_pairs / cfg.batch_size)
    total_steps = cfg.epochs * steps_per_epoch
    step = 0
    for epoch in range(cfg.epochs):
        order = torch.randperm(n_pairs, generator=generator)
        for start in range(0, n_pairs, cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            batch_centers, batch_contexts = centers[batch], contexts[batch]
            negatives = torch.multinomial(
                noise, batch.shape[0] * cfg.negative_samples, replacement=True, generator=generator
            ).view(-1, cfg.negative_samples)
            for group in optimizer.param_groups:
                group["lr"] = polynomial_decay(
                    step, initial=cfg.initial_lr, final=cfg.initial_lr / 100, max_decay_steps=total_steps
                )
            positive_scores, negative_scores = model(batch_centers, batch_contexts, negatives)
            loss = negative_sampling_loss(
                positive_scores, negative_scores, negatives != batch_contexts.unsqueeze(-1), reduction="sum"
            )
            optimizer.zero_grad(set_to_none=True)
            loss.backward()
            optimizer.step()
            if aggregator is not None:
                aggregator.update(LOSS_METRIC, loss.detach() / batch.shape[0])
            step += 1
        if aggregator is not None:
            metrics = aggregator.flush()
            if on_epoch_end is not None:
                on_epoch_end(epoch, metrics)
    return model


@torch.no_grad()
def skipgram_objective(model: SkipGram, corpus: WalkCorpus, cfg: EmbedConfig) -> float:
    """Mean negative-sampling loss per pair of the corpus, against a fixed seeded set of negatives."""
    centers, contexts = skipgram_pairs(corpus, cfg.window)
    if centers.shape[0] == 0:
        return 0.0
    negatives = torch.multinomial(
        noise_distribution(corpus),
        centers.shape[0] * cfg.negative_samples,
        replacement=True,
        generator=torch_generator(cfg.seed, OBJECTIVE_STREAM),
    ).view(-1, cfg.negative_samples)
    positive_scores, negative_scores = model(centers, contexts, negatives)
    mask = negatives != contexts.unsqueeze(-1)
    return float(negative_sampling_loss(positive_scores, negative_scores, mask, reduction="mean"))


def train_skipgram(
    corpus: WalkCorpus,
    n_nodes: int,
    cfg: EmbedConfig,
    layer_id: int = 0,
    digest: str = "",
    aggregator: Optional[MetricAggregator] = None,
    on_epoch_end: Optional[Callable[[int, Dict[str, float]], None]] = None,
) -> EmbeddingMatrix:
    """Input-side vectors of a skip-gram model trained on the corpus. Nodes that never occur in the
    corpus keep their initialization."""
    model = fit_skipgram(corpus, n_nodes, cfg, aggregator=aggregator, on_epoch_end=on_epoch_end)
    return EmbeddingMatrix(model.vectors.numpy().copy(), layer_id, digest, cfg.seed)


def embed_layer(
    layer: LayerGraph,
    cfg: EmbedConfig,
    layer_id: int = 0,
    aggregator: Optional[MetricAggregator] = None,
    on_epoch_end: Optional[Callable[[int, Dict[str, float]], None]] = None,
) -> EmbeddingMatrix:
    """Walks then skip-gram; equal layers and configs give bit-identical matrices."""
    corpus = generate_walks(layer, cfg)
    return train_skipgram(
        corpus,
        layer.node_count,
        cfg,
        layer_id=layer_id,
        digest=config_hash(layer, cfg),
        aggregator=aggregator,
        on_epoch_end=on_epoch_end,
    )
