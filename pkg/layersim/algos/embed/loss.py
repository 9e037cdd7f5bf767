from typing import Optional

import torch.nn.functional as F
from torch import Tensor


def negative_sampling_loss(
    positive_scores: Tensor,
    negative_scores: Tensor,
    negative_mask: Optional[Tensor] = None,
    reduction: str = "sum",
) -> Tensor:
    """Skip-gram negative-sampling objective `-log s(u.v) - sum_k log s(-u.v_k)` per observed pair.

    Args:
        positive_scores (Tensor): dot products of the observed pairs, shape (B,).
        negative_scores (Tensor): dot products against the negative samples, shape (B, K).
        negative_mask (Tensor, optional): boolean (B, K), False for negatives to ignore
            (e.g. a negative equal to the observed context).
        reduction (str): one of "none", "mean", "sum".

    Returns:
        the loss
    """
    negative_terms = F.logsigmoid(-negative_scores)
    if negative_mask is not None:
        negative_terms = negative_terms * negative_mask
    loss = -F.logsigmoid(positive_scores) - negative_terms.sum(-1)
    reduction = reduction.lower()
    if reduction == "none":
        return loss
    elif reduction == "mean":
        return loss.mean()
    elif reduction == "sum":
        return loss.sum()
    else:
        raise ValueError(f"Unrecognized reduction: {reduction}")
