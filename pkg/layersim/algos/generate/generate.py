import os
from collections import OrderedDict

from layersim.algos.generate.args import GenerateArgs
from layersim.algos.generate.ba import RewireParams, generate_ba, rewire, rewiring_ladder
from layersim.algos.generate.gmm import generate_gmm
from layersim.data.io import save_multiplex, save_nodes
from layersim.data.multiplex import MultiplexNetwork
from layersim.utils.logger import setup_fabric
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task
from layersim.utils.utils import atomic_write_text, format_metadata


def build_network(args: GenerateArgs) -> MultiplexNetwork:
    if args.model == "gmm":
        return generate_gmm(args.gmm_params(), n_layers=args.n_layers)
    if args.model == "ladder":
        return rewiring_ladder(args.n_nodes, args.m_attach, tuple(args.probabilities), args.seed)
    original = generate_ba(args.n_nodes, args.m_attach, args.seed)
    if args.rewire_probability is None:
        return MultiplexNetwork((original,), ("ba",))
    rewired = rewire(original, RewireParams(probability=args.rewire_probability, seed=args.seed))
    return MultiplexNetwork((original, rewired), ("p=0.00", f"p={args.rewire_probability:.2f}"))


def generation_metadata(args: GenerateArgs, net: MultiplexNetwork) -> "OrderedDict[str, object]":
    metadata = OrderedDict(model=args.model, seed=args.seed, n_nodes=net.n_nodes, n_layers=net.n_layers)
    if args.model == "gmm":
        metadata.update(
            mean_degree=args.mean_degree,
            gamma=args.gamma,
            temperature=args.temperature,
            angular_corr=args.angular_corr,
            radial_corr=args.radial_corr,
        )
    else:
        metadata.update(m_attach=args.m_attach)
        if args.model == "ladder":
            metadata.update(probabilities=" ".join(f"{p:g}" for p in args.probabilities))
        elif args.rewire_probability is not None:
            metadata.update(rewire_probability=args.rewire_probability)
    metadata.update(n_edges=" ".join(str(layer.n_edges) for layer in net.layers))
    return metadata


@register_task()
def main():
    parser = DataclassArgumentParser(GenerateArgs, prog="layersim generate")
    args: GenerateArgs = parser.parse_args_into_dataclasses()[0]
    if args.model == "gmm":
        args.gmm_params()
    elif args.rewire_probability is not None:
        RewireParams(probability=args.rewire_probability, seed=args.seed)
    for p in args.probabilities:
        RewireParams(probability=p)
    output = args.output if args.output is not None else args.output_path(f"{args.model}.edges")
    if args.dry_run:
        print(f"generate: arguments are valid, would write {output}")
        return

    fabric = setup_fabric(args, "generate")
    net = build_network(args)
    metadata = generation_metadata(args, net)
    fabric.log_dict({f"Graph/n_edges_layer_{k}": layer.n_edges for k, layer in enumerate(net.layers)}, 0)
    edges_path = save_multiplex(net, output)
    nodes_path = save_nodes(net, output + ".nodes")
    meta_path = atomic_write_text(output + ".meta", format_metadata(metadata))
    fabric.print(f"generate: {args.model} multiplex with {net.n_nodes} nodes and {net.n_layers} layers")
    for path in (edges_path, nodes_path, meta_path):
        fabric.print(os.path.abspath(path))
