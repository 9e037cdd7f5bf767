import os
import time
from datetime import datetime
from typing import Tuple

import torch
from lightning.fabric import Fabric
from lightning.fabric.loggers import TensorBoardLogger

from layersim.algos.args import StandardArgs


def create_tensorboard_logger(fabric: Fabric, args: StandardArgs, task_name: str) -> Tuple[TensorBoardLogger, str]:
    """Create the run logger under `root_dir/run_name` and dump the run arguments next to its events.

    Runs are single-process, so the logger always lives on the only rank.
    """
    root_dir = (
        args.root_dir
        if args.root_dir is not None
        else os.path.join("logs", task_name, datetime.today().strftime("%Y-%m-%d_%H-%M-%S"))
    )
    run_name = args.run_name if args.run_name is not None else f"{args.exp_name}_{args.seed}_{int(time.time())}"
    logger = TensorBoardLogger(root_dir=root_dir, name=run_name)
    log_dir = logger.log_dir

    # Save args as dict automatically
    args.log_dir = log_dir
    return logger, log_dir


def setup_fabric(args: StandardArgs, task_name: str) -> Fabric:
    """Single-device CPU Fabric, seeded, with the TensorBoard logger attached when enabled."""
    num_threads = args.num_threads or int(os.environ.get("LAYERSIM_NUM_THREADS", 0))
    if num_threads > 0:
        torch.set_num_threads(num_threads)
    fabric = Fabric(accelerator="cpu", devices=1)
    fabric.seed_everything(args.seed)
    if args.log_tensorboard and not args.dry_run:
        logger, _ = create_tensorboard_logger(fabric, args, task_name)
        fabric._loggers = [logger]
        fabric.logger.log_hyperparams(args.hyperparameters())
    return fabric
