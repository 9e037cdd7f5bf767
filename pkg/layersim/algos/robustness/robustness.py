import os
from collections import OrderedDict

import pandas as pd

from layersim.algos.robustness.args import RobustnessArgs
from layersim.algos.robustness.attack import (
    AttackParams,
    RobustnessResult,
    interlayer_degree_correlation,
    omega_score,
    replica_seeds,
    reshuffle_mapping,
)
from layersim.data.multiplex import MultiplexNetwork
from layersim.utils.exceptions import UsageError, ValidationError
from layersim.utils.logger import setup_fabric
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task
from layersim.utils.utils import atomic_write_frame, atomic_write_text, format_metadata


def select_pair(args: RobustnessArgs, net: MultiplexNetwork) -> MultiplexNetwork:
    if args.layers is None:
        if net.n_layers != 2:
            raise ValidationError(f"The input has {net.n_layers} layers, pick two with `--layers i j`")
        return net
    if len(args.layers) != 2 or args.layers[0] == args.layers[1]:
        raise UsageError(f"`--layers` expects two distinct layer indices, got: {list(args.layers)}")
    for index in args.layers:
        if not 1 <= index <= net.n_layers:
            raise UsageError(f"Layer index {index} out of range [1, {net.n_layers}]")
    return net.select_layers([index - 1 for index in args.layers])


def replica_frame(result: RobustnessResult) -> pd.DataFrame:
    names = ["original"] + [f"reshuffle_{r + 1}" for r in range(len(result.replica_delta_n))]
    return pd.DataFrame(
        {
            "replica": names,
            "delta_n": [result.delta_n] + list(result.replica_delta_n),
            "initial_gmcc": [trace.initial_gmcc for trace in result.traces],
            "removals": [len(trace) for trace in result.traces],
        },
        columns=["replica", "delta_n", "initial_gmcc", "removals"],
    )


def robustness_summary(net: MultiplexNetwork, params: AttackParams, result: RobustnessResult) -> "OrderedDict":
    reshuffled = reshuffle_mapping(net, replica_seeds(params)[0])
    return OrderedDict(
        layers=" ".join(net.layer_names),
        n_nodes=net.n_nodes,
        alpha=params.alpha,
        beta=params.beta,
        reshuffle_count=params.reshuffle_count,
        gmcc_only=params.gmcc_only,
        seed=params.seed,
        initial_gmcc=result.original_trace.initial_gmcc,
        delta_n=result.delta_n,
        delta_n_rs=f"{result.delta_n_rs:.12g}",
        omega=f"{result.omega:.12g}",
        degree_correlation=f"{interlayer_degree_correlation(net):.12g}",
        degree_correlation_reshuffled=f"{interlayer_degree_correlation(reshuffled):.12g}",
    )


@register_task()
def main():
    parser = DataclassArgumentParser(RobustnessArgs, prog="layersim robustness")
    args: RobustnessArgs = parser.parse_args_into_dataclasses()[0]
    params = args.attack_params()
    net = select_pair(args, args.load_input())
    if args.dry_run:
        print(f"robustness: {net.n_nodes} nodes, layers {', '.join(net.layer_names)}, arguments are valid")
        return

    fabric = setup_fabric(args, "robustness")
    result = omega_score(net, params)
    fabric.log_dict({"Robustness/delta_n": result.delta_n, "Robustness/delta_n_rs": result.delta_n_rs}, 0)
    fabric.log_dict({"Robustness/omega": result.omega}, 0)
    stem = args.input_stem
    summary = format_metadata(robustness_summary(net, params, result))
    paths = [
        atomic_write_frame(args.output_path(f"{stem}_robustness.csv"), replica_frame(result)),
        atomic_write_text(args.output_path(f"{stem}_robustness.txt"), summary),
    ]
    if args.save_traces:
        for name, trace in zip(replica_frame(result)["replica"], result.traces):
            paths.append(atomic_write_frame(args.output_path("traces", f"{stem}_{name}.csv"), trace.to_frame(net)))
    fabric.print(
        f"robustness: dN={result.delta_n}, dN_rs={result.delta_n_rs:.4f}, omega={result.omega:.4f} "
        f"over {params.reshuffle_count} reshuffles"
    )
    for path in paths:
        fabric.print(os.path.abspath(path))
