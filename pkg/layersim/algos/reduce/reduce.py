import os

from layersim.algos.reduce.args import ReduceArgs
from layersim.algos.reduce.reduction import ReductionReport, greedy_reduce
from layersim.utils.exceptions import ValidationError
from layersim.utils.logger import setup_fabric
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task
from layersim.utils.utils import PathLike, atomic_write_frame, atomic_write_text


def format_grouping(report: ReductionReport) -> str:
    lines = [f"# m={report.optimal_m} q={report.q_trajectory[report.n_layers - report.optimal_m]:.12g}"]
    lines += [" ".join(names) for names in report.optimal_grouping_names()]
    return "\n".join(lines) + "\n"


def write_report(report: ReductionReport, output_dir: PathLike, stem: str):
    prefix = os.path.join(output_dir, f"{stem}_{report.metric}")
    return [
        atomic_write_frame(f"{prefix}_q.csv", report.to_frame()),
        atomic_write_text(f"{prefix}_dendrogram.txt", report.dendrogram() + "\n"),
        atomic_write_text(f"{prefix}_grouping.txt", format_grouping(report)),
    ]


@register_task()
def main():
    parser = DataclassArgumentParser(ReduceArgs, prog="layersim reduce")
    args: ReduceArgs = parser.parse_args_into_dataclasses()[0]
    args.check()
    cfg = args.embed_config()
    net = args.load_input()
    if net.n_layers < 2:
        raise ValidationError(f"Reduction needs at least 2 layers, the input has {net.n_layers}")
    if args.dry_run:
        print(f"reduce: {net.n_layers} layers over {net.n_nodes} nodes, arguments are valid")
        return

    fabric = setup_fabric(args, "reduce")
    report = greedy_reduce(net, args.metric, cfg, args.omega, args.linkage)
    for k, q in enumerate(report.q_trajectory):
        fabric.log_dict({f"Reduction/q_{report.metric}": q}, k)
    paths = write_report(report, args.output_dir, args.input_stem)
    best_q = max(report.q_trajectory)
    fabric.print(f"reduce: metric={report.metric}, optimal m={report.optimal_m} of {report.n_layers}, q={best_q:.6f}")
    for path in paths:
        fabric.print(os.path.abspath(path))
