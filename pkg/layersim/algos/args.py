import json
import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from layersim.data.io import load_multiplex
from layersim.data.multiplex import MultiplexNetwork
from layersim.utils.exceptions import UsageError
from layersim.utils.parser import Arg


@dataclass
class StandardArgs:
    exp_name: str = Arg(default="default", help="the name of this experiment")
    seed: int = Arg(default=42, help="global seed; every random draw derives from it")
    dry_run: bool = Arg(default=False, help="whether to validate the arguments and inputs, then exit")
    root_dir: Optional[str] = Arg(
        default=None,
        help="the name of the root folder of the log directory of this experiment",
    )
    run_name: Optional[str] = Arg(default=None, help="the folder name of this run")
    output_dir: str = Arg(default="outputs", help="the folder where the result files are written")
    log_tensorboard: bool = Arg(default=True, help="whether to log run diagnostics to TensorBoard")
    num_threads: Optional[int] = Arg(
        default=None, help="torch intra-op threads; falls back to the `LAYERSIM_NUM_THREADS` environment variable"
    )

    def __setattr__(self, __name: str, __value: Any) -> None:
        super().__setattr__(__name, __value)
        if __name == "log_dir":
            file_name = os.path.join(__value, "args.json")
            os.makedirs(__value, exist_ok=True)
            with open(file_name, "w") as f:
                json.dump(asdict(self), f)

    def hyperparameters(self) -> Dict[str, Any]:
        return {k: (str(v) if isinstance(v, (tuple, list)) else v) for k, v in asdict(self).items()}

    def output_path(self, *parts: str) -> str:
        return os.path.join(self.output_dir, *parts)


@dataclass
class InputArgs(StandardArgs):
    input: Optional[str] = Arg(default=None, help="the extended edge list (`layer_id node_a node_b [weight]`)")
    layers_path: Optional[str] = Arg(default=None, help="optional `layerID layerLabel` file of the dataset")
    nodes_path: Optional[str] = Arg(default=None, help="optional `nodeID ...` file declaring every node")

    def load_input(self) -> MultiplexNetwork:
        if self.input is None:
            raise UsageError("the `--input` edge list is required")
        for path in (self.input, self.layers_path, self.nodes_path):
            if path is not None and not os.path.isfile(path):
                raise UsageError(f"input file not found: {path}")
        return load_multiplex(self.input, layers_path=self.layers_path, nodes_path=self.nodes_path)

    @property
    def input_stem(self) -> str:
        return os.path.splitext(os.path.basename(self.input))[0] if self.input else "multiplex"
