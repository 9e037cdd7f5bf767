from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from layersim.data.components import largest_cell, mutual_components
from layersim.data.multiplex import MultiplexNetwork, NodeSet
from layersim.utils.exceptions import ValidationError
from layersim.utils.utils import substream

# Substream keys of the robustness pipeline
RESHUFFLE_STREAM = 9
REPLICA_STREAM = 10


@dataclass(frozen=True)
class AttackParams:
    alpha: float = 0.4
    beta: float = 0.5
    reshuffle_count: int = 10
    seed: int = 42
    gmcc_only: bool = False

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValidationError(f"`alpha` must lie in (0, 1), got: {self.alpha}")
        if not 0 < self.beta <= 1:
            raise ValidationError(f"`beta` must lie in (0, 1], got: {self.beta}")
        if self.reshuffle_count < 1:
            raise ValidationError(f"`reshuffle_count` must be at least 1, got: {self.reshuffle_count}")


@dataclass(frozen=True)
class AttackTrace:
    removals: Tuple[int, ...]
    gmcc_sizes: Tuple[int, ...]
    initial_gmcc: int

    def __post_init__(self):
        if len(self.removals) != len(self.gmcc_sizes):
            raise ValidationError("An attack trace needs one GMCC size per removal")

    def __len__(self) -> int:
        return len(self.removals)

    def sizes(self) -> np.ndarray:
        """GMCC sizes from step 0 (before any removal) onwards."""
        return np.asarray((self.initial_gmcc,) + tuple(self.gmcc_sizes), dtype=np.int64)

    def to_frame(self, net: Optional[MultiplexNetwork] = None) -> pd.DataFrame:
        removed = [net.node_label(v) for v in self.removals] if net is not None else list(self.removals)
        return pd.DataFrame(
            {"step": np.arange(1, len(self) + 1), "removed": removed, "gmcc_size": list(self.gmcc_sizes)},
            columns=["step", "removed", "gmcc_size"],
        )


@dataclass(frozen=True, eq=False)
class RobustnessResult:
    delta_n: int
    delta_n_rs: float
    omega: float
    traces: Tuple[AttackTrace, ...]
    replica_delta_n: Tuple[int, ...] = ()

    @property
    def original_trace(self) -> AttackTrace:
        return self.traces[0]

    @property
    def reshuffled_traces(self) -> Tuple[AttackTrace, ...]:
        return self.traces[1:]


def _check_two_layers(net: MultiplexNetwork) -> None:
    if net.n_layers != 2:
        raise ValidationError(f"Attacks are defined on two-layer multiplexes, got {net.n_layers} layers")


def attack_priority(net: MultiplexNetwork, surviving: NodeSet, candidates: Optional[NodeSet] = None) -> int:
    """The surviving node of largest `K_i = max_layer k_i`, degrees counted in the subgraphs induced by
    the surviving nodes; ties go to the smallest id. `candidates` further restricts the choice."""
    if len(surviving) == 0:
        raise ValidationError("No surviving node to attack")
    mask = surviving.mask()
    priority = np.max([layer.degrees(mask) for layer in net.layers], axis=0).astype(np.int64)
    allowed = mask if candidates is None else mask & candidates.mask()
    if not allowed.any():
        raise ValidationError("No candidate node to attack")
    priority[~allowed] = -1
    return int(np.argmax(priority))


def targeted_attack(net: MultiplexNetwork, params: AttackParams) -> AttackTrace:
    """Remove the highest-priority node and recompute the GMCC, until the GMCC is smaller than `M^beta`.

    Degrees are updated incrementally after each removal, which is the same as recomputing them on the
    induced subgraphs. With `params.gmcc_only`, only current GMCC members are attacked.

    Raises:
        ValidationError: if the network does not have two layers, or its initial GMCC `M` is below 4.
    """
    _check_two_layers(net)
    n = net.n_nodes
    surviving = np.ones(n, dtype=bool)
    labels = mutual_components(net, NodeSet.full(n))
    giant = largest_cell(labels)
    m = len(giant)
    if m < 4:
        raise ValidationError(f"The initial GMCC has {m} nodes, at least 4 are needed for the attack thresholds")
    threshold = m**params.beta
    degrees = np.stack([layer.degrees() for layer in net.layers]).astype(np.int64)
    removals, sizes = [], []
    size = m
    while size >= threshold and surviving.any():
        priority = degrees.max(axis=0)
        allowed = surviving & giant.mask() if params.gmcc_only else surviving
        priority[~allowed] = -1
        target = int(np.argmax(priority))
        surviving[target] = False
        for k, layer in enumerate(net.layers):
            neighbors = layer.neighbors(target)
            degrees[k, neighbors[surviving[neighbors]]] -= 1
        degrees[:, target] = 0
        labels = mutual_components(net, NodeSet.from_mask(surviving), labels)
        giant = largest_cell(labels)
        size = len(giant)
        removals.append(target)
        sizes.append(size)
    return AttackTrace(tuple(removals), tuple(sizes), m)


def delta_n(trace: AttackTrace, alpha: float = 0.4, beta: float = 0.5) -> int:
    """Removals taking the GMCC from more than `alpha M` to less than `M^beta`.

    With sizes indexed from step 0 (`M`, before any removal), `t1` is the last step with size
    above `alpha M` and `t2` the first step with size below `M^beta`; the result is `t2 - t1`.

    Raises:
        ValidationError: if the trace never gets below `M^beta`.
    """
    sizes = trace.sizes()
    m = trace.initial_gmcc
    below = np.flatnonzero(sizes < m**beta)
    if below.size == 0:
        raise ValidationError("The attack trace is not terminated: the GMCC never falls below M^beta")
    t2 = int(below[0])
    above = np.flatnonzero(sizes[:t2] > alpha * m)
    t1 = int(above[-1]) if above.size else 0
    return t2 - t1


def reshuffle_mapping(net: MultiplexNetwork, seed: int) -> MultiplexNetwork:
    """Randomize the interlayer mapping: layer 2 is relabelled by a uniform random permutation."""
    _check_two_layers(net)
    permutation = substream(seed, RESHUFFLE_STREAM).permutation(net.n_nodes)
    return net.relabel_layer(1, permutation)


def interlayer_degree_correlation(net: MultiplexNetwork) -> float:
    """Pearson correlation between the degrees of every node in the two layers; NaN when a layer has
    constant degrees."""
    _check_two_layers(net)
    k1, k2 = (layer.degrees().astype(np.float64) for layer in net.layers)
    if k1.size < 2 or np.ptp(k1) == 0 or np.ptp(k2) == 0:
        return float("nan")
    return float(stats.pearsonr(k1, k2)[0])


def replica_seeds(params: AttackParams) -> Tuple[int, ...]:
    return tuple(int(substream(params.seed, REPLICA_STREAM, r).integers(2**31)) for r in range(params.reshuffle_count))


def omega_score(net: MultiplexNetwork, params: AttackParams) -> RobustnessResult:
    """Compare the attack on the network with attacks on `reshuffle_count` reshuffled counterparts.

    `omega = (dN - dN_rs) / (dN + dN_rs)`, with `dN_rs` the mean over the reshuffles.

    Raises:
        ValidationError: reported as a degenerate trace when `dN + dN_rs == 0`.
    """
    _check_two_layers(net)
    original = targeted_attack(net, params)
    original_delta = delta_n(original, params.alpha, params.beta)
    traces, replicas = [original], []
    for seed in replica_seeds(params):
        trace = targeted_attack(reshuffle_mapping(net, seed), params)
        traces.append(trace)
        replicas.append(delta_n(trace, params.alpha, params.beta))
    reshuffled_delta = float(np.mean(replicas))
    denominator = original_delta + reshuffled_delta
    if denominator == 0:
        raise ValidationError("degenerate trace: dN + dN_rs == 0")
    omega = (original_delta - reshuffled_delta) / denominator
    return RobustnessResult(original_delta, reshuffled_delta, omega, tuple(traces), tuple(replicas))
