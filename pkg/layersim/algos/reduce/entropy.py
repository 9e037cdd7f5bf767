from dataclasses import dataclass

import numpy as np
from scipy import linalg

from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import NumericError, ValidationError

# Largest layer whose full spectrum is computed
MAX_DENSE_NODES = 5000
# Eigenvalues at or below this are treated as zero in `-sum l log l`
EIGENVALUE_CUTOFF = 1e-15


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Trace-one symmetric positive semidefinite matrix built from a layer's Laplacian."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = self.matrix
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"A density operator must be square, got shape {matrix.shape}")
        if not np.allclose(matrix, matrix.T, rtol=0, atol=1e-10):
            raise ValidationError("A density operator must be symmetric")
        if abs(np.trace(matrix) - 1) > 1e-10:
            raise ValidationError(f"A density operator must have unit trace, got {np.trace(matrix)}")

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        try:
            return linalg.eigvalsh(self.matrix)
        except linalg.LinAlgError as e:
            raise NumericError(f"Eigendecomposition failed: {e}") from e

    def entropy(self, base: float = 2.0) -> float:
        return spectral_entropy(self.eigenvalues(), base)


def spectral_entropy(eigenvalues: np.ndarray, base: float = 2.0) -> float:
    """`-sum l log l` over the positive eigenvalues, with `0 log 0 = 0`."""
    positive = eigenvalues[eigenvalues > EIGENVALUE_CUTOFF]
    return float(max(0.0, -np.sum(positive * np.log(positive)) / np.log(base)))


def density_operator(layer: LayerGraph) -> DensityOperator:
    """`Lap / trace(Lap)` with `Lap = Deg - Adj`, weighted when the layer is.

    Raises:
        ValidationError: on an edgeless layer, or a layer too large for a dense eigendecomposition.
    """
    if layer.is_empty:
        raise ValidationError("entropy undefined for empty graph")
    if layer.node_count > MAX_DENSE_NODES:
        raise ValidationError(
            f"Spectral entropy needs a dense eigendecomposition, supported up to {MAX_DENSE_NODES} nodes; "
            f"got {layer.node_count}. Select a subset of nodes or layers first."
        )
    laplacian = layer.laplacian()
    return DensityOperator(laplacian / np.trace(laplacian))


def von_neumann_entropy(layer: LayerGraph) -> float:
    """Von Neumann entropy of the layer in bits, between 0 and `log2(N)`."""
    return density_operator(layer).entropy(base=2.0)
