from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from layersim.algos.embed.embedding import EmbedConfig, EmbeddingMatrix
from layersim.algos.embed.skipgram import embed_layer
from layersim.algos.sim.loss import aed_loss, check_same_shape, ped_loss, rescale_rms
from layersim.data.multiplex import LayerGraph, MultiplexNetwork, NodeSet
from layersim.utils.exceptions import ValidationError
from layersim.utils.metric import MetricAggregator

DEFAULT_OMEGA = 0.5


@dataclass(frozen=True)
class SimilarityResult:
    ped: float
    aed: float
    omega: float
    dissimilarity: float
    eatsim: float
    layer_pair: Tuple[int, int] = (0, 1)

    @classmethod
    def from_losses(cls, ped: float, aed: float, omega: float, layer_pair: Tuple[int, int]) -> "SimilarityResult":
        dissimilarity = omega * ped + (1 - omega) * aed
        return cls(ped, aed, omega, dissimilarity, 1 - dissimilarity, layer_pair)

    def swapped(self) -> "SimilarityResult":
        return SimilarityResult(
            self.ped, self.aed, self.omega, self.dissimilarity, self.eatsim, (self.layer_pair[1], self.layer_pair[0])
        )


def check_omega(omega: float) -> None:
    if not 0.0 <= omega <= 1.0:
        raise ValidationError(f"`omega` must lie in [0, 1], got: {omega}")


def eatsim_from_embeddings(
    xa: EmbeddingMatrix,
    xb: EmbeddingMatrix,
    omega: float = DEFAULT_OMEGA,
    layer_pair: Tuple[int, int] = (0, 1),
    anchors: Optional[NodeSet] = None,
    sample_pairs: Optional[int] = None,
    seed: int = 0,
) -> SimilarityResult:
    """Combine the PED and AED losses of two embeddings, each first rescaled to unit RMS row norm."""
    check_omega(omega)
    check_same_shape(xa.vectors, xb.vectors)
    a, b = rescale_rms(xa), rescale_rms(xb)
    ped = ped_loss(a, b, sample_pairs=sample_pairs, seed=seed)
    aed = aed_loss(a, b, anchors=anchors)
    return SimilarityResult.from_losses(ped, aed, omega, layer_pair)


def eatsim(
    layer_a: LayerGraph,
    layer_b: LayerGraph,
    cfg: EmbedConfig,
    omega: float = DEFAULT_OMEGA,
    layer_pair: Tuple[int, int] = (0, 1),
    anchors: Optional[NodeSet] = None,
) -> SimilarityResult:
    """Similarity of two node-aligned layers, both embedded with the same configuration and seed."""
    check_omega(omega)
    if layer_a.node_count != layer_b.node_count:
        raise ValidationError(f"Layers differ in node count: {layer_a.node_count} vs {layer_b.node_count}")
    xa = embed_layer(layer_a, cfg, layer_id=layer_pair[0])
    xb = embed_layer(layer_b, cfg, layer_id=layer_pair[1])
    return eatsim_from_embeddings(xa, xb, omega, layer_pair, anchors)


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Pairwise results of an L-layer multiplex, `results[i][j]` comparing layer i with layer j."""

    results: Tuple[Tuple[SimilarityResult, ...], ...]
    layer_names: Tuple[str, ...]

    @property
    def n_layers(self) -> int:
        return len(self.results)

    def _field(self, name: str) -> np.ndarray:
        return np.array([[getattr(r, name) for r in row] for row in self.results], dtype=np.float64)

    @property
    def eatsim(self) -> np.ndarray:
        return self._field("eatsim")

    @property
    def ped(self) -> np.ndarray:
        return self._field("ped")

    @property
    def aed(self) -> np.ndarray:
        return self._field("aed")

    @property
    def dissimilarity(self) -> np.ndarray:
        return self._field("dissimilarity")

    def __getitem__(self, pair: Tuple[int, int]) -> SimilarityResult:
        return self.results[pair[0]][pair[1]]

    def to_frame(self) -> pd.DataFrame:
        """One row per unordered layer pair."""
        rows = [
            {
                "layer_i": self.layer_names[i],
                "layer_j": self.layer_names[j],
                "ped": self.results[i][j].ped,
                "aed": self.results[i][j].aed,
                "D": self.results[i][j].dissimilarity,
                "eatsim": self.results[i][j].eatsim,
            }
            for i in range(self.n_layers)
            for j in range(i + 1, self.n_layers)
        ]
        return pd.DataFrame(rows, columns=["layer_i", "layer_j", "ped", "aed", "D", "eatsim"])

    def grid_frame(self) -> pd.DataFrame:
        """The EATSim matrix labelled by layer names, ready for a heatmap."""
        frame = pd.DataFrame(self.eatsim, columns=list(self.layer_names))
        frame.insert(0, "layer", list(self.layer_names))
        return frame


def embed_layers(
    layers: Sequence[LayerGraph],
    cfg: EmbedConfig,
    aggregator: Optional[MetricAggregator] = None,
    on_epoch_end: Optional[Callable[[int, int, Dict[str, float]], None]] = None,
) -> Tuple[EmbeddingMatrix, ...]:
    """Embed every layer once, with the same configuration."""
    embeddings = []
    for index, layer in enumerate(layers):
        callback = None
        if on_epoch_end is not None:
            callback = lambda epoch, metrics, index=index: on_epoch_end(index, epoch, metrics)  # noqa: E731
        embeddings.append(embed_layer(layer, cfg, layer_id=index, aggregator=aggregator, on_epoch_end=callback))
    return tuple(embeddings)


def similarity_matrix(
    net: MultiplexNetwork,
    cfg: EmbedConfig,
    omega: float = DEFAULT_OMEGA,
    embeddings: Optional[Sequence[EmbeddingMatrix]] = None,
    anchors: Optional[NodeSet] = None,
    sample_pairs: Optional[int] = None,
) -> SimilarityMatrix:
    """EATSim of every layer pair. Each layer is embedded once; the diagonal compares a layer with itself
    and holds zero losses."""
    check_omega(omega)
    if embeddings is None:
        embeddings = embed_layers(net.layers, cfg)
    if len(embeddings) != net.n_layers:
        raise ValidationError(f"Expected {net.n_layers} embeddings, got {len(embeddings)}")
    n = net.n_layers
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = SimilarityResult.from_losses(0.0, 0.0, omega, (i, i))
        for j in range(i + 1, n):
            result = eatsim_from_embeddings(
                embeddings[i], embeddings[j], omega, (i, j), anchors, sample_pairs, cfg.seed
            )
            grid[i][j] = result
            grid[j][i] = result.swapped()
    return SimilarityMatrix(tuple(tuple(row) for row in grid), tuple(net.layer_names))
