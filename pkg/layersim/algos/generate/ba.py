from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from layersim.data.multiplex import LayerGraph, MultiplexNetwork
from layersim.utils.exceptions import ValidationError
from layersim.utils.utils import substream

BA_STREAM = 0
REWIRE_STREAM = 1
LADDER_STREAM = 2

# Number of endpoint draws before an edge selected for rewiring is left untouched
MAX_REWIRE_RETRIES = 100

DEFAULT_REWIRING_PROBABILITIES = tuple(round(0.05 * k, 2) for k in range(1, 20))


@dataclass(frozen=True)
class RewireParams:
    probability: float
    seed: int = 42

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ValidationError(f"The rewiring probability must lie in [0, 1], got: {self.probability}")


def generate_ba(n: int, m_attach: int = 2, seed: int = 42) -> LayerGraph:
    """Barabási–Albert preferential-attachment graph with `m_attach * (n - m_attach)` edges."""
    if m_attach < 1:
        raise ValidationError(f"`m_attach` must be at least 1, got: {m_attach}")
    if n <= m_attach:
        raise ValidationError(f"The number of nodes must exceed `m_attach`, got n={n} and m_attach={m_attach}")
    graph = nx.barabasi_albert_graph(n, m_attach, seed=int(substream(seed, BA_STREAM).integers(2**31 - 1)))
    return LayerGraph.from_edges(n, np.asarray(list(graph.edges()), dtype=np.int64).reshape(-1, 2))


def rewire(graph: LayerGraph, params: RewireParams) -> LayerGraph:
    """Rewire every edge independently with probability `params.probability`.

    A selected edge keeps one uniformly chosen endpoint and gets a uniformly random new one; draws
    producing a self-loop or an edge already present are repeated up to `MAX_REWIRE_RETRIES` times,
    after which the original edge is kept. The number of edges never changes.
    """
    if graph.is_weighted:
        raise ValidationError("Rewiring is defined on unweighted layers only")
    rng = substream(params.seed, REWIRE_STREAM)
    n = graph.node_count
    current = [tuple(edge) for edge in graph.edges.tolist()]
    present = set(current)
    if params.probability == 0.0 or n < 3:
        return graph
    for k, (u, v) in enumerate(current):
        if rng.random() >= params.probability:
            continue
        keep = u if rng.random() < 0.5 else v
        for _ in range(MAX_REWIRE_RETRIES):
            other = int(rng.integers(n))
            candidate = (min(keep, other), max(keep, other))
            if other != keep and candidate not in present:
                present.discard((u, v))
                present.add(candidate)
                current[k] = candidate
                break
    return LayerGraph.from_edges(n, np.asarray(current, dtype=np.int64).reshape(-1, 2))


def edge_overlap(a: LayerGraph, b: LayerGraph) -> float:
    """Fraction of the edges of `a` that are also edges of `b`."""
    if a.n_edges == 0:
        return 0.0
    return len(a.edge_set() & b.edge_set()) / a.n_edges


def rewiring_ladder(
    n: int = 1000,
    m_attach: int = 2,
    probabilities: Sequence[float] = DEFAULT_REWIRING_PROBABILITIES,
    seed: int = 42,
) -> MultiplexNetwork:
    """An original BA layer followed by one copy of it per rewiring probability.

    Every copy is rewired independently from the original, each from its own substream.
    """
    original = generate_ba(n, m_attach, seed)
    layers = [original]
    names = ["p=0.00"]
    for k, p in enumerate(probabilities):
        rewire_seed = int(substream(seed, LADDER_STREAM, k).integers(2**31))
        layers.append(rewire(original, RewireParams(probability=p, seed=rewire_seed)))
        names.append(f"p={p:.2f}")
    return MultiplexNetwork(tuple(layers), tuple(names))
