from dataclasses import dataclass

import numpy as np
from scipy import linalg

from layersim.utils.exceptions import NumericError, ValidationError


@dataclass(frozen=True, eq=False)
class AlignmentResult:
    rotation: np.ndarray
    aligned_source: np.ndarray
    residual: float


def procrustes_align(xa, xb) -> AlignmentResult:
    """Orthogonal `W` minimizing `||xa W - xb||_F`.

    With the SVD `xa^T xb = U S V^T`, the minimizer is `W = U V^T`.

    Raises:
        ValidationError: if the shapes differ.
        NumericError: on non-finite input or when the SVD does not converge.
    """
    xa, xb = np.asarray(xa, dtype=np.float64), np.asarray(xb, dtype=np.float64)
    if xa.shape != xb.shape or xa.ndim != 2:
        raise ValidationError(f"Expected two N x d matrices of equal shape, got {xa.shape} and {xb.shape}")
    if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(xb))):
        raise NumericError("Cannot align matrices with non-finite entries")
    try:
        u, _, vt = linalg.svd(xa.T @ xb)
    except linalg.LinAlgError as e:
        raise NumericError(f"SVD failed: {e}") from e
    rotation = u @ vt
    aligned = xa @ rotation
    return AlignmentResult(rotation, aligned, float(np.linalg.norm(aligned - xb)))
