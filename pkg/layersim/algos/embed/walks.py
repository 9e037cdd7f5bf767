from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from layersim.algos.embed.embedding import WALK_STREAM, EmbedConfig
from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import ValidationError
from layersim.utils.utils import substream


@dataclass(frozen=True, eq=False)
class WalkCorpus:
    """Random walks over one layer, each a sequence of node ids of length at most `walk_length`."""

    walks: Tuple[np.ndarray, ...]
    n_nodes: int

    def __post_init__(self):
        for walk in self.walks:
            if walk.size and (walk.min() < 0 or walk.max() >= self.n_nodes):
                raise ValidationError(f"Walk ids must lie in [0, {self.n_nodes})")

    def __len__(self) -> int:
        return len(self.walks)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.walks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalkCorpus):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and len(self) == len(other)
            and all(np.array_equal(a, b) for a, b in zip(self.walks, other.walks))
        )

    def padded(self) -> np.ndarray:
        """The walks as rows of a `(W, max_length)` matrix, padded with -1."""
        max_length = max((walk.shape[0] for walk in self.walks), default=0)
        padded = np.full((len(self.walks), max_length), -1, dtype=np.int64)
        for row, walk in enumerate(self.walks):
            padded[row, : walk.shape[0]] = walk
        return padded

    def counts(self) -> np.ndarray:
        """Occurrences of every node in the corpus."""
        if not self.walks:
            return np.zeros(self.n_nodes, dtype=np.int64)
        return np.bincount(np.concatenate(self.walks), minlength=self.n_nodes)


def _transition_weights(layer: LayerGraph, current: int, previous: int, cfg: EmbedConfig) -> np.ndarray:
    """Unnormalized second-order transition weights from `current`, having arrived from `previous`."""
    neighbors = layer.neighbors(current)
    weights = layer.neighbor_weights(current).astype(np.float64, copy=True)
    if previous < 0 or cfg.is_first_order:
        return weights
    back = neighbors == previous
    common = np.isin(neighbors, layer.neighbors(previous), assume_unique=True)
    weights[back] /= cfg.return_p
    weights[~back & ~common] /= cfg.inout_q
    return weights


def random_walk(layer: LayerGraph, start: int, walk_index: int, cfg: EmbedConfig) -> np.ndarray:
    """One walk from `start`, drawn from the substream `(seed, start, walk_index)`.

    Every step consumes one uniform draw: with unit weights and `p = q = 1` it indexes the neighbor
    list directly, otherwise it is mapped through the cumulative transition weights.
    """
    if layer.neighbors(start).shape[0] == 0:
        return np.array([start], dtype=np.int64)
    draws = substream(cfg.seed, WALK_STREAM, start, walk_index).random(cfg.walk_length - 1)
    uniform = cfg.is_first_order and not layer.is_weighted
    walk = [start]
    for step in range(cfg.walk_length - 1):
        current = walk[-1]
        neighbors = layer.neighbors(current)
        if uniform:
            choice = min(int(draws[step] * neighbors.shape[0]), neighbors.shape[0] - 1)
        else:
            previous = walk[-2] if step > 0 else -1
            cumulative = np.cumsum(_transition_weights(layer, current, previous, cfg))
            choice = int(np.searchsorted(cumulative, draws[step] * cumulative[-1], side="right"))
            choice = min(choice, neighbors.shape[0] - 1)
        walk.append(int(neighbors[choice]))
    return np.asarray(walk, dtype=np.int64)


def generate_walks(layer: LayerGraph, cfg: EmbedConfig) -> WalkCorpus:
    """`walks_per_node` rounds of walks, each round starting one walk from every node in id order.

    An isolated node yields the single-node walk `[node]`.
    """
    if layer.node_count == 0:
        raise ValidationError("Cannot generate walks on a layer without nodes")
    walks = tuple(
        random_walk(layer, start, walk_index, cfg)
        for walk_index in range(cfg.walks_per_node)
        for start in range(layer.node_count)
    )
    return WalkCorpus(walks, layer.node_count)
