import os

from lightning.fabric import Fabric
from torchmetrics import MeanMetric

from layersim.algos.embed.args import EmbedArgs
from layersim.algos.embed.embedding import EmbedConfig, save_embedding
from layersim.algos.embed.skipgram import LOSS_METRIC
from layersim.algos.sim.similarity import embed_layers
from layersim.utils.logger import setup_fabric
from layersim.utils.metric import MetricAggregator
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task


def training_logger(fabric: Fabric, cfg: EmbedConfig):
    """Metric aggregator plus the per-epoch callback writing its values to the Fabric loggers."""
    aggregator = MetricAggregator({LOSS_METRIC: MeanMetric()})

    def on_epoch_end(layer: int, epoch: int, metrics) -> None:
        fabric.log_dict(metrics, layer * cfg.epochs + epoch)

    return aggregator, on_epoch_end


@register_task()
def main():
    parser = DataclassArgumentParser(EmbedArgs, prog="layersim embed")
    args: EmbedArgs = parser.parse_args_into_dataclasses()[0]
    cfg = args.embed_config()
    net = args.load_input()
    if args.dry_run:
        print(f"embed: {net.n_layers} layers over {net.n_nodes} nodes, arguments are valid")
        return

    fabric = setup_fabric(args, "embed")
    aggregator, on_epoch_end = training_logger(fabric, cfg)
    embeddings = embed_layers(net.layers, cfg, aggregator=aggregator, on_epoch_end=on_epoch_end)
    fabric.print(f"embed: {net.n_layers} layers, {net.n_nodes} nodes, d={cfg.dim}")
    for index, embedding in enumerate(embeddings):
        path = save_embedding(embedding, args.output_path(f"{args.input_stem}_layer{index + 1}.emb"))
        fabric.print(os.path.abspath(path))
