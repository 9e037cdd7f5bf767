from typing import Optional, Union

import numpy as np
from scipy.spatial.distance import pdist

from layersim.algos.embed.embedding import EmbeddingMatrix
from layersim.algos.sim.alignment import procrustes_align
from layersim.data.multiplex import NodeSet
from layersim.utils.exceptions import NumericError, ValidationError
from layersim.utils.utils import substream

MatrixLike = Union[EmbeddingMatrix, np.ndarray]

# Substream key of the sampled PED estimator
PED_SAMPLING_STREAM = 11


def as_matrix(x: MatrixLike) -> np.ndarray:
    matrix = x.vectors if isinstance(x, EmbeddingMatrix) else np.asarray(x, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValidationError(f"Expected an N x d matrix, got shape {matrix.shape}")
    return matrix


def check_same_shape(xa: np.ndarray, xb: np.ndarray) -> None:
    if xa.shape != xb.shape:
        raise ValidationError(f"Embedding shapes differ: {xa.shape} vs {xb.shape}")


def euclidean_distance(x: np.ndarray, y: np.ndarray) -> float:
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValidationError(f"Vector dimensions differ: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(x - y))


def rescale_rms(x: MatrixLike) -> np.ndarray:
    """Scale the matrix so that its root-mean-square row norm is 1."""
    matrix = as_matrix(x)
    norm = np.linalg.norm(matrix)
    if not np.isfinite(norm):
        raise NumericError("Embedding contains non-finite entries")
    if norm == 0:
        raise NumericError("Cannot rescale an all-zero embedding")
    return matrix / (norm / np.sqrt(matrix.shape[0]))


def ped_loss(
    xa: MatrixLike,
    xb: MatrixLike,
    sample_pairs: Optional[int] = None,
    seed: int = 0,
) -> float:
    """Mean absolute difference between the pairwise Euclidean distances of the two layers.

    The exact mean runs over all `N (N - 1) / 2` node pairs. With `sample_pairs`, the mean is
    estimated instead on that many uniformly drawn pairs of distinct nodes.
    """
    xa, xb = as_matrix(xa), as_matrix(xb)
    check_same_shape(xa, xb)
    n = xa.shape[0]
    if n < 2:
        raise ValidationError("The PED loss needs at least 2 nodes")
    if sample_pairs is None:
        return float(np.mean(np.abs(pdist(xa) - pdist(xb))))
    if sample_pairs < 1:
        raise ValidationError(f"`sample_pairs` must be positive, got: {sample_pairs}")
    rng = substream(seed, PED_SAMPLING_STREAM)
    i = rng.integers(n, size=sample_pairs)
    # second endpoint drawn among the other n - 1 nodes
    j = (i + 1 + rng.integers(n - 1, size=sample_pairs)) % n
    da = np.linalg.norm(xa[i] - xa[j], axis=1)
    db = np.linalg.norm(xb[i] - xb[j], axis=1)
    return float(np.mean(np.abs(da - db)))


def aed_loss(xa: MatrixLike, xb: MatrixLike, anchors: Optional[NodeSet] = None) -> float:
    """Mean anchor distance after rotating `xa` onto `xb` with the optimal orthogonal map.

    Anchors default to every node; with `anchors`, both the alignment and the mean use those rows only.
    """
    xa, xb = as_matrix(xa), as_matrix(xb)
    check_same_shape(xa, xb)
    if anchors is not None:
        if anchors.n_nodes != xa.shape[0]:
            raise ValidationError(f"Anchors span {anchors.n_nodes} nodes, expected {xa.shape[0]}")
        xa, xb = xa[anchors.ids], xb[anchors.ids]
    if xa.shape[0] == 0:
        raise ValidationError("The AED loss needs at least one anchor")
    alignment = procrustes_align(xa, xb)
    return float(np.mean(np.linalg.norm(alignment.aligned_source - xb, axis=1)))
