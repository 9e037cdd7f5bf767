import numpy as np
from scipy import linalg

from layersim.algos.reduce.entropy import DensityOperator, density_operator, spectral_entropy
from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import NumericError, ValidationError


def jsd_from_operators(rho_a: DensityOperator, rho_b: DensityOperator) -> float:
    n = rho_a.n_nodes
    if n != rho_b.n_nodes:
        raise ValidationError(f"Layers differ in node count: {n} vs {rho_b.n_nodes}")
    if n < 2:
        raise ValidationError("The JSD distance needs at least 2 nodes")
    try:
        mixture = spectral_entropy(linalg.eigvalsh(0.5 * (rho_a.matrix + rho_b.matrix)), base=np.e)
    except linalg.LinAlgError as e:
        raise NumericError(f"Eigendecomposition failed: {e}") from e
    divergence = mixture - 0.5 * (rho_a.entropy(base=np.e) + rho_b.entropy(base=np.e))
    return float(np.sqrt(max(0.0, divergence / np.log(n))))


def jsd_distance(layer_a: LayerGraph, layer_b: LayerGraph) -> float:
    """Square root of the Jensen-Shannon divergence between the layers' density operators,
    normalized by `ln N` so that it lies in [0, 1].

    Raises:
        ValidationError: if either layer is edgeless or the node counts differ.
    """
    if layer_a.node_count != layer_b.node_count:
        raise ValidationError(f"Layers differ in node count: {layer_a.node_count} vs {layer_b.node_count}")
    return jsd_from_operators(density_operator(layer_a), density_operator(layer_b))
