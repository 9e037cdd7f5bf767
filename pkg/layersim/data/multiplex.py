from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from scipy import sparse

from layersim.utils.exceptions import ValidationError


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class NodeSet:
    """An immutable set of node ids over `0..n_nodes-1`, stored as a sorted id array.

    Args:
        ids (Iterable[int]): the member ids; repeated ids are collapsed.
        n_nodes (int): the size of the node universe.
    """

    __slots__ = ("_ids", "_n_nodes")

    def __init__(self, ids: Iterable[int], n_nodes: int):
        if n_nodes < 0:
            raise ValidationError(f"The number of nodes must be non-negative, got: {n_nodes}")
        ids = np.unique(np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids, dtype=np.int64))
        if ids.size > 0 and (ids[0] < 0 or ids[-1] >= n_nodes):
            raise ValidationError(f"Node ids must lie in [0, {n_nodes}), got range [{ids[0]}, {ids[-1]}]")
        self._ids = _read_only(ids)
        self._n_nodes = int(n_nodes)

    @classmethod
    def full(cls, n_nodes: int) -> "NodeSet":
        return cls(np.arange(n_nodes, dtype=np.int64), n_nodes)

    @classmethod
    def empty(cls, n_nodes: int) -> "NodeSet":
        return cls(np.empty(0, dtype=np.int64), n_nodes)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "NodeSet":
        mask = np.asarray(mask, dtype=bool)
        return cls(np.flatnonzero(mask), mask.shape[0])

    @property
    def ids(self) -> np.ndarray:
        return self._ids

    @property
    def n_nodes(self) -> int:
        return self._n_nodes

    def mask(self) -> np.ndarray:
        mask = np.zeros(self._n_nodes, dtype=bool)
        mask[self._ids] = True
        return mask

    def without(self, node: int) -> "NodeSet":
        return NodeSet(self._ids[self._ids != node], self._n_nodes)

    def issubset(self, other: "NodeSet") -> bool:
        return bool(np.isin(self._ids, other.ids).all())

    def __len__(self) -> int:
        return int(self._ids.size)

    def __iter__(self) -> Iterator[int]:
        return (int(i) for i in self._ids)

    def __contains__(self, node: object) -> bool:
        if not isinstance(node, (int, np.integer)):
            return False
        pos = np.searchsorted(self._ids, node)
        return bool(pos < self._ids.size and self._ids[pos] == node)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NodeSet):
            return self._n_nodes == other._n_nodes and np.array_equal(self._ids, other._ids)
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._n_nodes, self._ids.tobytes()))

    def __repr__(self) -> str:
        return f"NodeSet({self._ids.tolist()}, n_nodes={self._n_nodes})"


class LayerGraph:
    """An undirected simple graph over the dense node ids `0..node_count-1`.

    Edges are kept as a lexicographically sorted `(E, 2)` array with `u < v`; weights, when present,
    are strictly positive. The symmetric CSR adjacency has sorted column indices, so neighbor lists
    come out in id order.
    """

    def __init__(self, node_count: int, edges: np.ndarray, weights: Optional[np.ndarray] = None):
        self._node_count = int(node_count)
        self._edges = _read_only(edges)
        self._weights = None if weights is None else _read_only(weights)
        values = np.ones(edges.shape[0]) if weights is None else weights
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        adjacency = sparse.csr_matrix(
            (np.concatenate([values, values]), (rows, cols)), shape=(self._node_count, self._node_count)
        )
        adjacency.sort_indices()
        self._adjacency = adjacency

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Union[np.ndarray, Sequence[Tuple[int, int]]],
        weights: Optional[Union[np.ndarray, Sequence[float]]] = None,
    ) -> "LayerGraph":
        """Build a layer validating the invariants. Repeated edges collapse into one, summing their
        weights when the layer is weighted.

        Raises:
            ValidationError: on self-loops, out-of-range endpoints or non-positive weights.
        """
        if node_count < 0:
            raise ValidationError(f"The number of nodes must be non-negative, got: {node_count}")
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size > 0:
            if edges.min() < 0 or edges.max() >= node_count:
                raise ValidationError(f"Edge endpoints must lie in [0, {node_count})")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise ValidationError("Self-loops are not allowed")
        if weights is not None:
            weights = np.asarray(weights, dtype=np.float64).reshape(-1)
            if weights.shape[0] != edges.shape[0]:
                raise ValidationError(f"Expected {edges.shape[0]} weights, got: {weights.shape[0]}")
            if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
                raise ValidationError("Edge weights must be strictly positive finite reals")
        edges = np.sort(edges, axis=1)
        unique, inverse = np.unique(edges, axis=0, return_inverse=True)
        unique = unique.reshape(-1, 2)
        if weights is not None:
            weights = np.bincount(inverse.reshape(-1), weights=weights, minlength=unique.shape[0])
        return cls(node_count, unique, weights)

    @classmethod
    def from_adjacency(cls, adjacency: sparse.spmatrix, weighted: bool = True) -> "LayerGraph":
        upper = sparse.triu(sparse.coo_matrix(adjacency), k=1).tocoo()
        keep = upper.data != 0
        edges = np.stack([upper.row[keep], upper.col[keep]], axis=1)
        weights = upper.data[keep] if weighted else None
        return cls.from_edges(adjacency.shape[0], edges, weights)

    @classmethod
    def empty(cls, node_count: int) -> "LayerGraph":
        return cls.from_edges(node_count, np.empty((0, 2), dtype=np.int64))

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def weights(self) -> Optional[np.ndarray]:
        return self._weights

    @property
    def adjacency(self) -> sparse.csr_matrix:
        return self._adjacency

    @property
    def n_edges(self) -> int:
        return int(self._edges.shape[0])

    @property
    def is_weighted(self) -> bool:
        return self._weights is not None

    @property
    def is_empty(self) -> bool:
        return self.n_edges == 0

    def neighbors(self, node: int) -> np.ndarray:
        start, stop = self._adjacency.indptr[node], self._adjacency.indptr[node + 1]
        return self._adjacency.indices[start:stop]

    def neighbor_weights(self, node: int) -> np.ndarray:
        start, stop = self._adjacency.indptr[node], self._adjacency.indptr[node + 1]
        return self._adjacency.data[start:stop]

    def degrees(self, mask: Optional[np.ndarray] = None) -> np.ndarray:
        """Number of neighbors of every node, counted inside the subgraph induced by `mask` if given."""
        if mask is None:
            return np.diff(self._adjacency.indptr)
        mask = np.asarray(mask, dtype=bool)
        keep = mask[self._edges[:, 0]] & mask[self._edges[:, 1]]
        kept = self._edges[keep]
        degrees = np.bincount(kept.reshape(-1), minlength=self._node_count)
        degrees[~mask] = 0
        return degrees

    def induced_adjacency(self, mask: np.ndarray) -> sparse.csr_matrix:
        mask = np.asarray(mask, dtype=bool)
        keep = mask[self._edges[:, 0]] & mask[self._edges[:, 1]]
        kept = self._edges[keep]
        return sparse.csr_matrix(
            (np.ones(kept.shape[0]), (kept[:, 0], kept[:, 1])), shape=(self._node_count, self._node_count)
        )

    def laplacian(self) -> np.ndarray:
        """Dense combinatorial Laplacian `Deg - Adj`, weighted where applicable."""
        adjacency = self._adjacency.toarray()
        return np.diag(adjacency.sum(axis=1)) - adjacency

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((int(u), int(v)) for u, v in self._edges)

    def relabel(self, permutation: np.ndarray) -> "LayerGraph":
        """Move node `i` to id `permutation[i]`."""
        permutation = np.asarray(permutation, dtype=np.int64)
        if permutation.shape[0] != self._node_count or not np.array_equal(
            np.sort(permutation), np.arange(self._node_count)
        ):
            raise ValidationError("`permutation` must be a permutation of the node ids")
        return LayerGraph.from_edges(self._node_count, permutation[self._edges], self._weights)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._node_count))
        if self._weights is None:
            graph.add_edges_from(map(tuple, self._edges.tolist()))
        else:
            graph.add_weighted_edges_from(
                (int(u), int(v), float(w)) for (u, v), w in zip(self._edges, self._weights)
            )
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LayerGraph):
            return NotImplemented
        if self._node_count != other._node_count or not np.array_equal(self._edges, other._edges):
            return False
        if self._weights is None or other._weights is None:
            return self._weights is None and other._weights is None
        return np.array_equal(self._weights, other._weights)

    def __hash__(self) -> int:
        return hash((self._node_count, self._edges.tobytes()))

    def __repr__(self) -> str:
        kind = "weighted" if self.is_weighted else "unweighted"
        return f"LayerGraph(node_count={self._node_count}, n_edges={self.n_edges}, {kind})"


@dataclass(frozen=True)
class MultiplexNetwork:
    """`L` node-aligned layers over a shared node set; the interlayer links are the identity on ids.

    Args:
        layers (Sequence[LayerGraph]): the layers, all with the same `node_count`.
        layer_names (Sequence[str], optional): display labels. Defaults to `layer_1..layer_L`.
        node_labels (Mapping[str, int], optional): external node identifier to internal id.
    """

    layers: Tuple[LayerGraph, ...]
    layer_names: Tuple[str, ...] = ()
    node_labels: Optional[Mapping[str, int]] = field(default=None, compare=False)

    def __post_init__(self):
        layers = tuple(self.layers)
        if len(layers) == 0:
            raise ValidationError("A multiplex network needs at least one layer, got zero layers")
        n_nodes = layers[0].node_count
        for i, layer in enumerate(layers):
            if layer.node_count != n_nodes:
                raise ValidationError(
                    f"Layers must be node-aligned: layer {i} has {layer.node_count} nodes instead of {n_nodes}"
                )
        names = tuple(self.layer_names) if self.layer_names else tuple(f"layer_{i + 1}" for i in range(len(layers)))
        if len(names) != len(layers):
            raise ValidationError(f"Expected {len(layers)} layer names, got: {len(names)}")
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "layer_names", names)

    @property
    def n_nodes(self) -> int:
        return self.layers[0].node_count

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def __len__(self) -> int:
        return len(self.layers)

    def __getitem__(self, index: int) -> LayerGraph:
        return self.layers[index]

    def __iter__(self) -> Iterator[LayerGraph]:
        return iter(self.layers)

    def node_label(self, node: int) -> str:
        if self.node_labels is None:
            return str(node)
        return self._reverse_labels()[node]

    def _reverse_labels(self) -> Dict[int, str]:
        reverse = self.__dict__.get("_reverse_cache")
        if reverse is None:
            reverse = {v: k for k, v in (self.node_labels or {}).items()}
            object.__setattr__(self, "_reverse_cache", reverse)
        return reverse

    def select_layers(self, indices: Sequence[int]) -> "MultiplexNetwork":
        return MultiplexNetwork(
            tuple(self.layers[i] for i in indices), tuple(self.layer_names[i] for i in indices), self.node_labels
        )

    def relabel_layer(self, index: int, permutation: np.ndarray) -> "MultiplexNetwork":
        layers = list(self.layers)
        layers[index] = layers[index].relabel(permutation)
        return MultiplexNetwork(tuple(layers), self.layer_names, self.node_labels)
