"""Geometric multiplex generation.

Every layer is a geometric popularity-similarity graph: node `i` has a hidden degree `kappa_i` and an
angle `theta_i` on the circle, and it links to `j` with probability
`1 / (1 + (d_ij / (mu * kappa_i * kappa_j)) ** (1 / T))`, where `d_ij = N * dtheta_ij / (2 pi)`.
Layers beyond the first get hidden variables correlated with the first layer's: angles through a
wrapped-normal perturbation whose spread shrinks linearly with `angular_corr`, hidden-degree ranks
through a rank-mixing kernel whose width shrinks linearly with `radial_corr`.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import optimize

from layersim.data.multiplex import LayerGraph, MultiplexNetwork
from layersim.utils.exceptions import ValidationError
from layersim.utils.utils import substream

EDGE_STREAM = 3
HIDDEN_STREAM = 4

# Angular spread of the layer-to-layer perturbation at zero angular correlation
SIGMA_MAX = np.pi


@dataclass(frozen=True)
class GmmParams:
    n_nodes: int = 2000
    mean_degree: float = 6.0
    gamma: float = 2.5
    temperature: float = 0.4
    angular_corr: float = 1.0
    radial_corr: float = 1.0
    seed: int = 42

    def __post_init__(self):
        if self.n_nodes < 2:
            raise ValidationError(f"`n_nodes` must be at least 2, got: {self.n_nodes}")
        if not 0 < self.mean_degree < self.n_nodes - 1:
            raise ValidationError(f"`mean_degree` must lie in (0, n_nodes - 1), got: {self.mean_degree}")
        if self.gamma <= 2:
            raise ValidationError(f"`gamma` must be greater than 2, got: {self.gamma}")
        if not 0 < self.temperature < 1:
            raise ValidationError(f"`temperature` must lie in (0, 1), got: {self.temperature}")
        if not 0 <= self.angular_corr <= 1:
            raise ValidationError(f"`angular_corr` must lie in [0, 1], got: {self.angular_corr}")
        if not 0 <= self.radial_corr <= 1:
            raise ValidationError(f"`radial_corr` must lie in [0, 1], got: {self.radial_corr}")


def _pareto_mean(kappa_min: float, kappa_max: float, gamma: float) -> float:
    ratio = kappa_max / kappa_min
    return kappa_min * (gamma - 1) / (gamma - 2) * (1 - ratio ** (2 - gamma)) / (1 - ratio ** (1 - gamma))


def _kappa_max(kappa_min: float, n_nodes: int, gamma: float) -> float:
    return min(n_nodes - 1.0, kappa_min * n_nodes ** (1 / (gamma - 1)))


def solve_kappa_min(mean_degree: float, n_nodes: int, gamma: float, rtol: float = 1e-10) -> float:
    """Lower bound of the bounded power law whose mean equals `mean_degree`."""

    def excess(kappa_min: float) -> float:
        return _pareto_mean(kappa_min, _kappa_max(kappa_min, n_nodes, gamma), gamma) - mean_degree

    return float(optimize.brentq(excess, 1e-9, float(mean_degree), rtol=rtol))


def sample_hidden_degrees(rng: np.random.Generator, params: GmmParams) -> np.ndarray:
    kappa_min = solve_kappa_min(params.mean_degree, params.n_nodes, params.gamma)
    ratio = _kappa_max(kappa_min, params.n_nodes, params.gamma) / kappa_min
    u = rng.random(params.n_nodes)
    exponent = 1 - params.gamma
    return kappa_min * (1 - u * (1 - ratio**exponent)) ** (1 / exponent)


def correlated_angles(rng: np.random.Generator, theta: np.ndarray, angular_corr: float) -> np.ndarray:
    if angular_corr == 0:
        return rng.uniform(0, 2 * np.pi, theta.shape[0])
    sigma = SIGMA_MAX * (1 - angular_corr)
    return np.mod(theta + rng.normal(0.0, sigma, theta.shape[0]), 2 * np.pi)


def correlated_hidden_degrees(rng: np.random.Generator, kappa: np.ndarray, radial_corr: float) -> np.ndarray:
    """The layer-1 hidden degrees reassigned to nodes by a noisy copy of their layer-1 ranks.

    At `radial_corr == 1` every node keeps its own value; at 0 the values are randomly permuted.
    """
    n = kappa.shape[0]
    values = np.sort(kappa)
    ranks = np.empty(n, dtype=np.int64)
    ranks[np.argsort(kappa, kind="stable")] = np.arange(n)
    if radial_corr == 0:
        target = rng.permutation(n)
    else:
        width = n * (1 - radial_corr)
        if width > 0:
            # truncated two-sided geometric kernel centred on the layer-1 rank
            success = 1.0 / (1.0 + width)
            shift = (rng.geometric(success, n) - 1) * rng.choice([-1, 1], n)
            keys = np.clip(ranks + shift, 0, n - 1).astype(np.float64)
        else:
            keys = ranks.astype(np.float64)
        target = np.empty(n, dtype=np.int64)
        target[np.lexsort((rng.random(n), keys))] = np.arange(n)
    return values[target]


def geometric_layer(kappa: np.ndarray, theta: np.ndarray, params: GmmParams, layer_key: int) -> LayerGraph:
    """Sample one layer from its hidden variables, drawing row `i` (pairs `i < j`) from its own substream
    so that the result does not depend on how rows are scheduled."""
    n = params.n_nodes
    mu = np.sin(params.temperature * np.pi) / (2 * params.mean_degree * params.temperature * np.pi)
    rows, cols = [], []
    for i in range(n - 1):
        j = np.arange(i + 1, n)
        dtheta = np.pi - np.abs(np.pi - np.abs(theta[i] - theta[j]))
        distance = n * dtheta / (2 * np.pi)
        with np.errstate(divide="ignore", over="ignore"):
            prob = 1.0 / (1.0 + (distance / (mu * kappa[i] * kappa[j])) ** (1.0 / params.temperature))
        draws = substream(params.seed, EDGE_STREAM, layer_key, i).random(j.shape[0])
        linked = j[draws < prob]
        rows.append(np.full(linked.shape[0], i, dtype=np.int64))
        cols.append(linked)
    edges = np.stack([np.concatenate(rows), np.concatenate(cols)], axis=1) if rows else np.empty((0, 2))
    return LayerGraph.from_edges(n, edges)


def hidden_variables(params: GmmParams, n_layers: int = 2) -> Tuple[np.ndarray, np.ndarray]:
    """Hidden degrees and angles of every layer, as `(n_layers, n_nodes)` arrays."""
    rng = substream(params.seed, HIDDEN_STREAM)
    kappa = [sample_hidden_degrees(rng, params)]
    theta = [rng.uniform(0, 2 * np.pi, params.n_nodes)]
    for _ in range(1, n_layers):
        theta.append(correlated_angles(rng, theta[0], params.angular_corr))
        kappa.append(correlated_hidden_degrees(rng, kappa[0], params.radial_corr))
    return np.stack(kappa), np.stack(theta)


def generate_gmm(params: GmmParams, n_layers: int = 2) -> MultiplexNetwork:
    """Node-aligned geometric multiplex; layers after the first are correlated copies of layer 1."""
    if n_layers < 1:
        raise ValidationError(f"`n_layers` must be at least 1, got: {n_layers}")
    kappa, theta = hidden_variables(params, n_layers)
    layers = tuple(geometric_layer(kappa[k], theta[k], params, k) for k in range(n_layers))
    return MultiplexNetwork(layers, tuple(f"gmm_{k + 1}" for k in range(n_layers)))
