"""Greedy layer aggregation driven by pairwise layer similarity.

Starting from the L original layers, the two most similar current layers are replaced by their sum
at every step, until one layer is left. Each configuration is scored by the distinguishability
`q = 1 - mean(h(C_a)) / h(A)`, where `A` is the sum of all original layers and `h` the Von Neumann
entropy; the best cut is the configuration with the largest `q`.
"""
from dataclasses import dataclass, field
from functools import reduce as fold
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from layersim.algos.embed.embedding import EmbedConfig, EmbeddingMatrix
from layersim.algos.embed.skipgram import embed_layer
from layersim.algos.reduce.entropy import density_operator, von_neumann_entropy
from layersim.algos.sim.jsd import jsd_from_operators
from layersim.algos.sim.similarity import DEFAULT_OMEGA, check_omega, eatsim_from_embeddings
from layersim.data.multiplex import LayerGraph, MultiplexNetwork
from layersim.utils.exceptions import ValidationError

Group = Tuple[int, ...]
Metric = Literal["eatsim", "jsd"]
Linkage = Literal["recompute", "average"]


def aggregate(layers: Sequence[LayerGraph], i: int, j: int) -> LayerGraph:
    """Weighted layer whose adjacency is the sum of the adjacencies of layers `i` and `j`."""
    if i == j:
        raise ValidationError(f"Cannot aggregate layer {i} with itself")
    for index in (i, j):
        if not -len(layers) <= index < len(layers):
            raise IndexError(f"Layer index {index} out of range for {len(layers)} layers")
    return sum_layers(layers[i], layers[j])


def sum_layers(*layers: LayerGraph) -> LayerGraph:
    if len({layer.node_count for layer in layers}) != 1:
        raise ValidationError("Only layers over the same nodes can be aggregated")
    adjacency = fold(lambda acc, layer: acc + layer.adjacency, layers[1:], layers[0].adjacency)
    return LayerGraph.from_adjacency(adjacency, weighted=True)


def aggregate_all(layers: Sequence[LayerGraph]) -> LayerGraph:
    if not layers:
        raise ValidationError("Nothing to aggregate")
    return sum_layers(*layers)


@dataclass(frozen=True, eq=False)
class ReductionState:
    current_layers: Tuple[LayerGraph, ...]
    groups: Tuple[Group, ...]
    entropies: Tuple[float, ...]
    aggregated_entropy: float

    @property
    def q(self) -> float:
        return distinguishability_q(self)

    @property
    def m(self) -> int:
        return len(self.current_layers)

    @property
    def membership(self) -> Dict[int, int]:
        """Original layer index -> index of the current layer holding it."""
        return {layer: g for g, group in enumerate(self.groups) for layer in group}


def distinguishability_q(state: ReductionState) -> float:
    return 1.0 - float(np.mean(state.entropies)) / state.aggregated_entropy


def reduction_state(
    current_layers: Sequence[LayerGraph], groups: Sequence[Group], entropies: Sequence[float], aggregated_entropy: float
) -> ReductionState:
    if aggregated_entropy <= 0:
        raise ValidationError("The aggregate of all layers has zero entropy, q is undefined")
    return ReductionState(tuple(current_layers), tuple(groups), tuple(entropies), aggregated_entropy)


@dataclass(frozen=True)
class Merge:
    left: Group
    right: Group
    value: float

    @property
    def merged(self) -> Group:
        return tuple(sorted(self.left + self.right))


@dataclass(frozen=True, eq=False)
class ReductionReport:
    merge_sequence: Tuple[Merge, ...]
    q_trajectory: Tuple[float, ...]
    optimal_m: int
    optimal_grouping: Tuple[Group, ...]
    layer_names: Tuple[str, ...]
    metric: str = "eatsim"
    aggregated_entropy: float = float("nan")
    groupings: Tuple[Tuple[Group, ...], ...] = field(default=())

    @property
    def n_layers(self) -> int:
        return len(self.layer_names)

    def group_names(self, group: Group) -> List[str]:
        return [self.layer_names[i] for i in group]

    def optimal_grouping_names(self) -> List[List[str]]:
        return [self.group_names(group) for group in self.optimal_grouping]

    def dendrogram(self) -> str:
        """Parenthesized merge tree, every internal node followed by `:height`, the similarity
        value at which its two children were merged."""
        trees: Dict[Group, str] = {(i,): name for i, name in enumerate(self.layer_names)}
        for merge in self.merge_sequence:
            trees[merge.merged] = f"({trees.pop(merge.left)},{trees.pop(merge.right)}):{merge.value:.6g}"
        return ",".join(trees[group] for group in sorted(trees)) + ";"

    def to_linkage(self) -> np.ndarray:
        """`(L - 1, 4)` matrix in scipy's linkage layout; heights are dissimilarities (`1 - eatsim`
        or the JSD distance). Plot data only: heights need not be monotone."""
        cluster_ids: Dict[Group, int] = {(i,): i for i in range(self.n_layers)}
        rows = []
        for k, merge in enumerate(self.merge_sequence):
            height = 1.0 - merge.value if self.metric == "eatsim" else merge.value
            a, b = sorted((cluster_ids[merge.left], cluster_ids[merge.right]))
            rows.append([a, b, height, len(merge.merged)])
            cluster_ids[merge.merged] = self.n_layers + k
        return np.asarray(rows, dtype=np.float64).reshape(-1, 4)

    def to_frame(self) -> pd.DataFrame:
        """The q trajectory, one row per layer count from L down to 1."""
        rows = [{"m": self.n_layers, "q": self.q_trajectory[0], "merged_pair": "", "similarity": np.nan}]
        for k, merge in enumerate(self.merge_sequence):
            pair = "+".join(self.group_names(merge.left)) + "|" + "+".join(self.group_names(merge.right))
            m = self.n_layers - k - 1
            rows.append({"m": m, "q": self.q_trajectory[k + 1], "merged_pair": pair, "similarity": merge.value})
        return pd.DataFrame(rows, columns=["m", "q", "merged_pair", "similarity"])


def optimal_cut(q_trajectory: Sequence[float]) -> int:
    """Index of the largest q; the first index, i.e. the larger layer count, wins ties."""
    return int(np.argmax(np.asarray(q_trajectory)))


class _PairScorer:
    """Pairwise scores between current groups, cached by group."""

    def __init__(
        self,
        layers: Sequence[LayerGraph],
        metric: Metric,
        cfg: EmbedConfig,
        omega: float,
        linkage: Linkage,
    ):
        self.metric = metric
        self.cfg = cfg
        self.omega = omega
        self.linkage = linkage
        self.layers: Dict[Group, LayerGraph] = {(i,): layer for i, layer in enumerate(layers)}
        self._embeddings: Dict[Group, EmbeddingMatrix] = {}
        self._operators = {}
        self._scores: Dict[Tuple[Group, Group], float] = {}

    def add(self, group: Group, layer: LayerGraph) -> None:
        self.layers[group] = layer

    def _embedding(self, group: Group) -> EmbeddingMatrix:
        if group not in self._embeddings:
            self._embeddings[group] = embed_layer(self.layers[group], self.cfg, layer_id=group[0])
        return self._embeddings[group]

    def _operator(self, group: Group):
        if group not in self._operators:
            self._operators[group] = density_operator(self.layers[group])
        return self._operators[group]

    def _direct(self, a: Group, b: Group) -> float:
        if self.metric == "eatsim":
            return eatsim_from_embeddings(self._embedding(a), self._embedding(b), self.omega, (a[0], b[0])).eatsim
        return jsd_from_operators(self._operator(a), self._operator(b))

    def score(self, a: Group, b: Group) -> float:
        key = (a, b) if a < b else (b, a)
        if key not in self._scores:
            if self.linkage == "average" and len(a) + len(b) > 2:
                value = float(np.mean([self.score((i,), (j,)) for i in a for j in b]))
            else:
                value = self._direct(*key)
            self._scores[key] = value
        return self._scores[key]

    def better(self, candidate: float, best: Optional[float]) -> bool:
        if best is None:
            return True
        return candidate > best if self.metric == "eatsim" else candidate < best


def greedy_reduce(
    net: MultiplexNetwork,
    metric: Metric = "eatsim",
    cfg: Optional[EmbedConfig] = None,
    omega: float = DEFAULT_OMEGA,
    linkage: Linkage = "recompute",
) -> ReductionReport:
    """Merge the most similar pair of current layers (largest EATSim or smallest JSD) until one layer
    is left, recording the merges and q after each of them.

    Ties go to the first pair in current-layer order. With `linkage="recompute"` merged layers are
    embedded (or turned into density operators) anew; with `"average"` the score between two groups
    is the mean of the original pairwise scores across them.

    Raises:
        ValidationError: with fewer than 2 layers, an unknown metric or linkage, or an edgeless layer.
    """
    if net.n_layers < 2:
        raise ValidationError(f"Reduction needs at least 2 layers, got {net.n_layers}")
    if metric not in ("eatsim", "jsd"):
        raise ValidationError(f"Unknown similarity metric `{metric}`, expected `eatsim` or `jsd`")
    if linkage not in ("recompute", "average"):
        raise ValidationError(f"Unknown linkage `{linkage}`, expected `recompute` or `average`")
    check_omega(omega)
    cfg = cfg if cfg is not None else EmbedConfig()

    aggregated_entropy = von_neumann_entropy(aggregate_all(net.layers))
    groups: List[Group] = [(i,) for i in range(net.n_layers)]
    layers: Dict[Group, LayerGraph] = {(i,): layer for i, layer in enumerate(net.layers)}
    entropies: Dict[Group, float] = {group: von_neumann_entropy(layers[group]) for group in groups}
    scorer = _PairScorer(net.layers, metric, cfg, omega, linkage)

    def current_state() -> ReductionState:
        return reduction_state(
            [layers[g] for g in groups], groups, [entropies[g] for g in groups], aggregated_entropy
        )

    q_trajectory = [current_state().q]
    groupings = [tuple(groups)]
    merges: List[Merge] = []
    while len(groups) > 1:
        best: Optional[float] = None
        best_pair = (0, 1)
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                value = scorer.score(groups[a], groups[b])
                if scorer.better(value, best):
                    best, best_pair = value, (a, b)
        left, right = groups[best_pair[0]], groups[best_pair[1]]
        merge = Merge(left, right, float(best))
        merged_layer = sum_layers(layers[left], layers[right])
        layers[merge.merged] = merged_layer
        entropies[merge.merged] = von_neumann_entropy(merged_layer)
        scorer.add(merge.merged, merged_layer)
        groups[best_pair[0]] = merge.merged
        del groups[best_pair[1]]
        merges.append(merge)
        q_trajectory.append(current_state().q)
        groupings.append(tuple(groups))

    best_index = optimal_cut(q_trajectory)
    return ReductionReport(
        merge_sequence=tuple(merges),
        q_trajectory=tuple(q_trajectory),
        optimal_m=net.n_layers - best_index,
        optimal_grouping=groupings[best_index],
        layer_names=tuple(net.layer_names),
        metric=metric,
        aggregated_entropy=aggregated_entropy,
        groupings=tuple(groupings),
    )


def replay_merges(net: MultiplexNetwork, merge_sequence: Sequence[Merge]) -> Tuple[float, ...]:
    """Recompute the q trajectory by applying a recorded merge sequence from scratch."""
    aggregated_entropy = von_neumann_entropy(aggregate_all(net.layers))
    groups: List[Group] = [(i,) for i in range(net.n_layers)]
    layers: Dict[Group, LayerGraph] = {(i,): layer for i, layer in enumerate(net.layers)}

    def q_value() -> float:
        entropies = [von_neumann_entropy(layers[g]) for g in groups]
        return reduction_state([layers[g] for g in groups], groups, entropies, aggregated_entropy).q

    trajectory = [q_value()]
    for merge in merge_sequence:
        if merge.left not in groups or merge.right not in groups:
            raise ValidationError(f"Merge {merge.left} + {merge.right} does not match the current layers")
        layers[merge.merged] = sum_layers(layers[merge.left], layers[merge.right])
        position = groups.index(merge.left)
        groups[position] = merge.merged
        groups.remove(merge.right)
        trajectory.append(q_value())
    return tuple(trajectory)
