from dataclasses import dataclass

from layersim.algos.args import InputArgs
from layersim.algos.embed.embedding import EmbedConfig
from layersim.utils.parser import Arg


@dataclass
class EmbedArgs(InputArgs):
    dim: int = Arg(default=32, help="the embedding dimension")
    walks_per_node: int = Arg(default=10, help="the number of walks started from every node")
    walk_length: int = Arg(default=10, help="the length of every walk")
    window: int = Arg(default=10, help="the skip-gram context window")
    return_p: float = Arg(default=1.0, help="the return parameter p of the biased walks")
    inout_q: float = Arg(default=1.0, help="the in-out parameter q of the biased walks")
    negative_samples: int = Arg(default=5, help="negative samples per observed pair")
    epochs: int = Arg(default=5, help="passes over the skip-gram pairs")
    initial_lr: float = Arg(default=0.025, help="the initial learning rate, decayed linearly to 1/100 of it")
    batch_size: int = Arg(default=512, help="skip-gram pairs per SGD step")

    def embed_config(self) -> EmbedConfig:
        return EmbedConfig(
            dim=self.dim,
            walks_per_node=self.walks_per_node,
            walk_length=self.walk_length,
            window=self.window,
            return_p=self.return_p,
            inout_q=self.inout_q,
            negative_samples=self.negative_samples,
            epochs=self.epochs,
            initial_lr=self.initial_lr,
            batch_size=self.batch_size,
            seed=self.seed,
        )
