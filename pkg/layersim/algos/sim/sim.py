import os

from layersim.algos.embed.embed import training_logger
from layersim.algos.sim.args import SimArgs
from layersim.algos.sim.similarity import embed_layers, similarity_matrix
from layersim.utils.exceptions import ValidationError
from layersim.utils.logger import setup_fabric
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task
from layersim.utils.utils import atomic_write_frame


@register_task()
def main():
    parser = DataclassArgumentParser(SimArgs, prog="layersim sim")
    args: SimArgs = parser.parse_args_into_dataclasses()[0]
    args.check()
    cfg = args.embed_config()
    net = args.load_input()
    if net.n_layers < 2:
        raise ValidationError(f"`sim` compares layers pairwise, the input has {net.n_layers} layer")
    if args.dry_run:
        print(f"sim: {net.n_layers} layers over {net.n_nodes} nodes, arguments are valid")
        return

    fabric = setup_fabric(args, "sim")
    aggregator, on_epoch_end = training_logger(fabric, cfg)
    embeddings = embed_layers(net.layers, cfg, aggregator=aggregator, on_epoch_end=on_epoch_end)
    matrix = similarity_matrix(net, cfg, args.omega, embeddings=embeddings, sample_pairs=args.sample_pairs)
    frame = matrix.to_frame()
    fabric.log_dict({"Similarity/mean_eatsim": float(frame["eatsim"].mean())}, 0)
    paths = [atomic_write_frame(args.output_path(f"{args.input_stem}_sim.csv"), frame)]
    if args.grid:
        paths.append(atomic_write_frame(args.output_path(f"{args.input_stem}_eatsim_grid.csv"), matrix.grid_frame()))
    fabric.print(f"sim: {len(frame)} layer pairs, omega={args.omega}, mean eatsim={frame['eatsim'].mean():.6f}")
    for path in paths:
        fabric.print(os.path.abspath(path))
