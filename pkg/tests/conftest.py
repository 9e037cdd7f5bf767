import os

import networkx as nx
import numpy as np
import pytest

from layersim.algos.embed.embedding import EmbedConfig
from layersim.data.multiplex import LayerGraph, MultiplexNetwork


@pytest.fixture(autouse=True)
def hide_gpus():
    os.environ["CUDA_VISIBLE_DEVICES"] = "-1"


@pytest.fixture()
def small_cfg():
    return EmbedConfig(dim=8, walks_per_node=4, walk_length=8, window=3, epochs=2, batch_size=64, seed=7)


def random_layer(n: int, p: float, seed: int) -> LayerGraph:
    graph = nx.gnp_random_graph(n, p, seed=seed)
    return LayerGraph.from_edges(n, np.asarray(list(graph.edges()), dtype=np.int64).reshape(-1, 2))


def random_multiplex(n: int, n_layers: int, p: float, seed: int) -> MultiplexNetwork:
    return MultiplexNetwork(tuple(random_layer(n, p, seed * 100 + k) for k in range(n_layers)))


@pytest.fixture()
def triangle():
    return LayerGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
