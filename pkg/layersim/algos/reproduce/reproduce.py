import os
from typing import List

import pandas as pd
from lightning.fabric import Fabric

from layersim.algos.reduce.reduce import write_report
from layersim.algos.reproduce.args import ReproduceArgs
from layersim.algos.reproduce.experiments import (
    ExperimentReport,
    gmm_sweep,
    ladder_heatmap,
    ladder_reduction,
    reduction_summary,
    rewiring_decay,
)
from layersim.utils.logger import setup_fabric
from layersim.utils.parser import DataclassArgumentParser
from layersim.utils.registry import register_task
from layersim.utils.utils import atomic_write_frame, atomic_write_text, format_metadata


def write_experiment(report: ExperimentReport, directory: str) -> List[str]:
    paths = []
    for name, content in report.files.items():
        path = os.path.join(directory, name)
        if isinstance(content, pd.DataFrame):
            paths.append(atomic_write_frame(path, content))
        else:
            paths.append(atomic_write_text(path, content))
    summary_path = os.path.join(directory, f"{report.name}_summary.txt")
    paths.append(atomic_write_text(summary_path, format_metadata(report.summary)))
    return paths


def run_experiment(args: ReproduceArgs, fabric: Fabric, directory: str) -> List[str]:
    cfg = args.embed_config()
    on_step = fabric.log_dict
    ladder = dict(
        n_nodes=args.network_size(),
        m_attach=args.m_attach,
        probabilities=args.probabilities,
        cfg=cfg,
        omega=args.omega,
        seed=args.seed,
        on_step=on_step,
    )
    if args.experiment == "fig2a":
        return write_experiment(rewiring_decay(**ladder), directory)
    if args.experiment == "fig2b":
        return write_experiment(ladder_heatmap(**ladder), directory)
    if args.experiment == "fig3":
        report = gmm_sweep(
            base=args.gmm_params(),
            sweep=args.sweep,
            values=args.values,
            n_seeds=args.n_seeds,
            cfg=cfg,
            omega=args.omega,
            attack=args.attack_params(),
            robustness=args.robustness,
            seed=args.seed,
            on_step=on_step,
        )
        return write_experiment(report, directory)
    reports = ladder_reduction(**ladder)
    paths = []
    for report in reports.values():
        paths += write_report(report, directory, "ladder")
    summary = ExperimentReport("fig5", summary=reduction_summary(reports, args.seed))
    return paths + write_experiment(summary, directory)


@register_task()
def main():
    parser = DataclassArgumentParser(ReproduceArgs, prog="layersim reproduce")
    args: ReproduceArgs = parser.parse_args_into_dataclasses()[0]
    args.check()
    if args.dry_run:
        print(f"reproduce: experiment {args.experiment} on {args.network_size()} nodes, arguments are valid")
        return

    fabric = setup_fabric(args, f"reproduce_{args.experiment}")
    directory = args.output_path(args.experiment)
    paths = run_experiment(args, fabric, directory)
    fabric.print(f"reproduce: {args.experiment} done, {len(paths)} files in {os.path.abspath(directory)}")
    for path in paths:
        fabric.print(os.path.abspath(path))
