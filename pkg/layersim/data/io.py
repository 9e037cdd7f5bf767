import math
import os
import warnings
from typing import Dict, List, Optional, Tuple

import numpy as np

from layersim.data.multiplex import LayerGraph, MultiplexNetwork
from layersim.utils.exceptions import ParseError, ValidationError
from layersim.utils.utils import PathLike, atomic_write_text

SUPPORTED_FORMATS = ("extended_edge_list",)


def _content_lines(path: PathLike):
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield line_number, line


def _is_header(tokens: List[str], key: str) -> bool:
    return tokens[0].lower() == key.lower()


def _read_layers_file(path: PathLike) -> Tuple[List[str], List[str]]:
    ids, names = [], []
    for line_number, line in _content_lines(path):
        tokens = line.split(maxsplit=1)
        if not ids and _is_header(tokens, "layerID"):
            continue
        ids.append(tokens[0])
        names.append(tokens[1].strip() if len(tokens) > 1 else tokens[0])
    return ids, names


def _read_nodes_file(path: PathLike) -> List[str]:
    ids: List[str] = []
    for _, line in _content_lines(path):
        tokens = line.split()
        if not ids and _is_header(tokens, "nodeID"):
            continue
        ids.append(tokens[0])
    return ids


def load_multiplex(
    path: PathLike,
    format: str = "extended_edge_list",
    layers_path: Optional[PathLike] = None,
    nodes_path: Optional[PathLike] = None,
) -> MultiplexNetwork:
    """Load a node-aligned multiplex from an extended edge list.

    Every content line reads `layer_id node_a node_b [weight]`; `#` lines are comments. Layer and
    node tokens are mapped to dense indices in first-seen order, unless a `layers_path`
    (`layerID layerLabel`) or a `nodes_path` (`nodeID ...`) file declares them first: declared
    layers without edges are kept as empty layers and declared nodes without edges become
    isolated nodes. Repeated edges collapse into one edge, summing weights when weighted.

    Raises:
        ParseError: on a malformed line, reporting its line number.
        ValidationError: on negative weights or when no layer is found.
    """
    if format not in SUPPORTED_FORMATS:
        raise ValidationError(f"Unsupported multiplex format `{format}`, expected one of {SUPPORTED_FORMATS}")
    if not os.path.isfile(path):
        raise ValidationError(f"Multiplex file not found: {path}")

    layer_index: Dict[str, int] = {}
    layer_names: List[str] = []
    if layers_path is not None:
        for token, name in zip(*_read_layers_file(layers_path)):
            if token not in layer_index:
                layer_index[token] = len(layer_index)
                layer_names.append(name)
    node_index: Dict[str, int] = {}
    if nodes_path is not None:
        for token in _read_nodes_file(nodes_path):
            node_index.setdefault(token, len(node_index))

    edges: Dict[int, List[Tuple[int, int]]] = {}
    weights: Dict[int, List[float]] = {}
    weighted = False
    for line_number, line in _content_lines(path):
        tokens = line.split()
        if len(tokens) not in (3, 4):
            raise ParseError(
                f"expected `layer_id node_a node_b [weight]`, got {len(tokens)} fields", line_number, os.fspath(path)
            )
        weight = 1.0
        if len(tokens) == 4:
            weighted = True
            try:
                weight = float(tokens[3])
            except ValueError:
                raise ParseError(f"invalid weight `{tokens[3]}`", line_number, os.fspath(path)) from None
            if math.isnan(weight) or math.isinf(weight):
                raise ParseError(f"non-finite weight `{tokens[3]}`", line_number, os.fspath(path))
            if weight < 0:
                raise ValidationError(f"{path}:{line_number}: negative weight {weight}")
        layer_token, a, b = tokens[:3]
        if layer_token not in layer_index:
            layer_index[layer_token] = len(layer_index)
            layer_names.append(layer_token)
        layer = layer_index[layer_token]
        u = node_index.setdefault(a, len(node_index))
        v = node_index.setdefault(b, len(node_index))
        edges.setdefault(layer, [])
        weights.setdefault(layer, [])
        if u == v:
            warnings.warn(f"{path}:{line_number}: self-loop on node `{a}` dropped")
            continue
        if weight == 0:
            warnings.warn(f"{path}:{line_number}: zero-weight edge dropped")
            continue
        edges[layer].append((u, v))
        weights[layer].append(weight)

    if not layer_index:
        raise ValidationError(f"{path}: zero layers found")
    n_nodes = len(node_index)
    layers = []
    for layer in range(len(layer_index)):
        layer_edges = np.asarray(edges.get(layer, []), dtype=np.int64).reshape(-1, 2)
        layer_weights = np.asarray(weights.get(layer, []), dtype=np.float64) if weighted else None
        layers.append(LayerGraph.from_edges(n_nodes, layer_edges, layer_weights))
    return MultiplexNetwork(tuple(layers), tuple(layer_names), dict(node_index))


def format_multiplex(net: MultiplexNetwork) -> str:
    lines = []
    for index, (layer, name) in enumerate(zip(net.layers, net.layer_names)):
        token = name if name and len(name.split()) == 1 else str(index + 1)
        for k, (u, v) in enumerate(layer.edges):
            line = f"{token} {net.node_label(int(u))} {net.node_label(int(v))}"
            if layer.is_weighted:
                line += f" {float(layer.weights[k])!r}"
            lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


def save_multiplex(net: MultiplexNetwork, path: PathLike) -> str:
    """Write `net` as an extended edge list. Layer names without whitespace are used as layer ids,
    so that loading the file back restores them."""
    return atomic_write_text(path, format_multiplex(net))


def save_nodes(net: MultiplexNetwork, path: PathLike) -> str:
    """Write the `nodeID nodeLabel` file declaring every node in id order, isolated ones included."""
    lines = ["nodeID nodeLabel"] + [f"{net.node_label(i)} {net.node_label(i)}" for i in range(net.n_nodes)]
    return atomic_write_text(path, "\n".join(lines) + "\n")
