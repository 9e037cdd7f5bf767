from typing import Optional

import torch
from torch import Tensor, nn


class SkipGram(nn.Module):
    """Skip-gram with negative sampling: an input (center) and a context embedding table.

    Args:
        num_nodes (int): number of rows of both tables.
        embedding_dim (int): dimension of the vectors.
        initial_vectors (Tensor, optional): starting input vectors, of shape (num_nodes, embedding_dim).
            Context vectors always start at zero.
        dtype (torch.dtype): dtype of both tables.
            Defaults to torch.float32.
    """

    def __init__(
        self,
        num_nodes: int,
        embedding_dim: int,
        initial_vectors: Optional[Tensor] = None,
        dtype: torch.dtype = torch.float32,
    ) -> None:
        super().__init__()
        self.num_nodes = num_nodes
        self.embedding_dim = embedding_dim
        # dense gradients: the CPU backward accumulates rows in a fixed order
        self.input_embeddings = nn.Embedding(num_nodes, embedding_dim, dtype=dtype)
        self.context_embeddings = nn.Embedding(num_nodes, embedding_dim, dtype=dtype)
        with torch.no_grad():
            if initial_vectors is not None:
                self.input_embeddings.weight.copy_(initial_vectors)
            self.context_embeddings.weight.zero_()

    def forward(self, centers: Tensor, contexts: Tensor, negatives: Tensor):
        """Scores of the observed pairs, shape (B,), and of the negative pairs, shape (B, K)."""
        center_vectors = self.input_embeddings(centers)
        positive_scores = (center_vectors * self.context_embeddings(contexts)).sum(-1)
        negative_scores = torch.bmm(self.context_embeddings(negatives), center_vectors.unsqueeze(-1)).squeeze(-1)
        return positive_scores, negative_scores

    @property
    def vectors(self) -> Tensor:
        return self.input_embeddings.weight.detach()
