import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import torch

from layersim.data.multiplex import LayerGraph
from layersim.utils.exceptions import NumericError, ParseError, ValidationError
from layersim.utils.utils import PathLike, atomic_write, torch_generator

# Substream keys of the embedding pipeline
WALK_STREAM = 5
INIT_STREAM = 6
TRAIN_STREAM = 7
OBJECTIVE_STREAM = 8


@dataclass(frozen=True)
class EmbedConfig:
    dim: int = 32
    walks_per_node: int = 10
    walk_length: int = 10
    window: int = 10
    return_p: float = 1.0
    inout_q: float = 1.0
    negative_samples: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    batch_size: int = 512
    seed: int = 42

    def __post_init__(self):
        if self.dim < 2:
            raise ValidationError(f"`dim` must be at least 2, got: {self.dim}")
        if self.walks_per_node < 1:
            raise ValidationError(f"`walks_per_node` must be at least 1, got: {self.walks_per_node}")
        if self.walk_length < 2:
            raise ValidationError(f"`walk_length` must be at least 2, got: {self.walk_length}")
        if self.window < 1:
            raise ValidationError(f"`window` must be at least 1, got: {self.window}")
        if not (self.return_p > 0 and self.inout_q > 0):
            raise ValidationError(f"`return_p` and `inout_q` must be positive, got: {self.return_p}, {self.inout_q}")
        if self.negative_samples < 1:
            raise ValidationError(f"`negative_samples` must be at least 1, got: {self.negative_samples}")
        if self.epochs < 0:
            raise ValidationError(f"`epochs` must be non-negative, got: {self.epochs}")
        if not self.initial_lr > 0:
            raise ValidationError(f"`initial_lr` must be positive, got: {self.initial_lr}")
        if self.batch_size < 1:
            raise ValidationError(f"`batch_size` must be at least 1, got: {self.batch_size}")

    @property
    def is_first_order(self) -> bool:
        return self.return_p == 1.0 and self.inout_q == 1.0


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """The `N x d` node vectors of one layer, row `i` being node `i`."""

    vectors: np.ndarray
    layer_id: int = 0
    config_hash: str = ""
    seed: int = 0

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2:
            raise ValidationError(f"Embedding vectors must be a 2-D matrix, got shape {vectors.shape}")
        if not np.all(np.isfinite(vectors)):
            raise NumericError("Embedding vectors contain NaN or Inf entries")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n_nodes(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def config_hash(layer: LayerGraph, cfg: EmbedConfig) -> str:
    """Digest of the embedding configuration together with the layer's edges and weights."""
    digest = hashlib.sha256()
    digest.update(json.dumps(asdict(cfg), sort_keys=True).encode())
    digest.update(str(layer.node_count).encode())
    digest.update(np.ascontiguousarray(layer.edges, dtype=np.int64).tobytes())
    if layer.weights is not None:
        digest.update(np.ascontiguousarray(layer.weights, dtype=np.float64).tobytes())
    return digest.hexdigest()


def initial_vectors(n_nodes: int, cfg: EmbedConfig) -> np.ndarray:
    """Seeded input-vector initialization, uniform in `[-0.5 / d, 0.5 / d]`."""
    uniform = torch.rand(n_nodes, cfg.dim, generator=torch_generator(cfg.seed, INIT_STREAM), dtype=torch.float64)
    return ((uniform - 0.5) / cfg.dim).numpy()


def save_embedding(embedding: EmbeddingMatrix, path: PathLike) -> str:
    header = (
        f"n={embedding.n_nodes} d={embedding.dim} seed={embedding.seed} "
        f"layer={embedding.layer_id} config_hash={embedding.config_hash or '-'}"
    )
    return atomic_write(
        path, lambda tmp_path: np.savetxt(tmp_path, embedding.vectors, fmt="%.17g", header=header, comments="# ")
    )


def load_embedding(path: PathLike) -> EmbeddingMatrix:
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline()
    if not first.startswith("#"):
        raise ParseError("missing `# n=... d=...` header", 1, str(path))
    header = dict(token.split("=", 1) for token in first.lstrip("#").split() if "=" in token)
    try:
        n_nodes, dim = int(header["n"]), int(header["d"])
        seed, layer_id = int(header.get("seed", 0)), int(header.get("layer", 0))
    except (KeyError, ValueError) as e:
        raise ParseError(f"invalid header `{first.strip()}`", 1, str(path)) from e
    try:
        vectors = np.loadtxt(path, comments="#", ndmin=2, dtype=np.float64)
    except ValueError as e:
        raise ParseError(str(e), None, str(path)) from e
    if n_nodes == 0:
        vectors = vectors.reshape(0, dim)
    if vectors.shape != (n_nodes, dim):
        raise ParseError(f"expected a {n_nodes}x{dim} matrix, got {vectors.shape}", None, str(path))
    digest: Optional[str] = header.get("config_hash")
    return EmbeddingMatrix(vectors, layer_id, "" if digest in (None, "-") else digest, seed)
