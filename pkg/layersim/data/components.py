from typing import List, Optional

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components as _csgraph_components

from layersim.data.multiplex import LayerGraph, MultiplexNetwork, NodeSet


def _component_labels(n_nodes: int, edges: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Component label of every node in `mask` on the graph spanned by `edges`; -1 outside the mask.

    Labels are renumbered in order of the smallest member id.
    """
    graph = sparse.csr_matrix((np.ones(edges.shape[0]), (edges[:, 0], edges[:, 1])), shape=(n_nodes, n_nodes))
    _, raw = _csgraph_components(graph, directed=False)
    labels = np.full(n_nodes, -1, dtype=np.int64)
    members = np.flatnonzero(mask)
    if members.size == 0:
        return labels
    _, first_index, inverse = np.unique(raw[members], return_index=True, return_inverse=True)
    # `np.unique` orders by raw label; rank by the smallest member so that labels follow node ids
    rank = np.empty_like(first_index)
    rank[np.argsort(first_index)] = np.arange(first_index.size)
    labels[members] = rank[inverse.reshape(-1)]
    return labels


def connected_components(layer: LayerGraph, restrict: NodeSet) -> List[NodeSet]:
    """Partition `restrict` into the connected components of the subgraph it induces in `layer`.

    Components are returned in order of their smallest node id.
    """
    mask = restrict.mask()
    edges = layer.edges
    edges = edges[mask[edges[:, 0]] & mask[edges[:, 1]]]
    labels = _component_labels(layer.node_count, edges, mask)
    members = np.flatnonzero(mask)
    if members.size == 0:
        return []
    return [NodeSet(members[labels[members] == c], layer.node_count) for c in range(labels[members].max() + 1)]


def mutual_components(
    net: MultiplexNetwork, surviving: NodeSet, labels: Optional[np.ndarray] = None
) -> np.ndarray:
    """Stable partition of the surviving nodes into mutually connected components.

    Cells are refined layer after layer, keeping only the edges whose endpoints share a cell, until a
    full pass over the layers splits nothing. Every stable cell is connected inside itself in every
    layer, and every mutually connected node set lies within a single cell.

    Args:
        net (MultiplexNetwork): the multiplex.
        surviving (NodeSet): the nodes still present.
        labels (np.ndarray, optional): a partition to start from, e.g. the stable partition before a
            node removal. Nodes outside `surviving` are ignored.

    Returns:
        The cell label of every node, -1 for nodes outside `surviving`.
    """
    n_nodes = net.n_nodes
    mask = surviving.mask()
    if labels is None:
        current = np.where(mask, 0, -1).astype(np.int64)
    else:
        current = np.where(mask, labels, -1).astype(np.int64)
    n_cells = len(np.unique(current[mask]))
    stable_layers = 0
    layer_index = 0
    while stable_layers < net.n_layers:
        edges = net.layers[layer_index].edges
        keep = mask[edges[:, 0]] & mask[edges[:, 1]] & (current[edges[:, 0]] == current[edges[:, 1]])
        refined = _component_labels(n_nodes, edges[keep], mask)
        n_refined = int(refined.max()) + 1 if mask.any() else 0
        if n_refined == n_cells:
            stable_layers += 1
        else:
            stable_layers = 1
            n_cells = n_refined
        current = refined
        layer_index = (layer_index + 1) % net.n_layers
    return current


def largest_cell(labels: np.ndarray) -> NodeSet:
    """The largest cell of a partition, ties going to the cell holding the smallest node id."""
    n_nodes = labels.shape[0]
    valid = labels >= 0
    if not valid.any():
        return NodeSet.empty(n_nodes)
    sizes = np.bincount(labels[valid])
    # cells are numbered by their smallest member, so argmax picks the smallest id among ties
    best = int(np.argmax(sizes))
    return NodeSet(np.flatnonzero(labels == best), n_nodes)


def gmcc(net: MultiplexNetwork, surviving: Optional[NodeSet] = None) -> NodeSet:
    """Giant mutually connected component of the surviving nodes.

    A lone node is a mutually connected component of size 1, so the result is empty only when
    `surviving` is.
    """
    if surviving is None:
        surviving = NodeSet.full(net.n_nodes)
    return largest_cell(mutual_components(net, surviving))
