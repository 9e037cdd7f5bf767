from dataclasses import dataclass
from typing import Literal

from layersim.algos.sim.args import SimArgs
from layersim.utils.parser import Arg


@dataclass
class ReduceArgs(SimArgs):
    metric: Literal["eatsim", "jsd"] = Arg(default="eatsim", help="the similarity driving the merges")
    linkage: Literal["recompute", "average"] = Arg(
        default="recompute",
        help="`recompute`: score merged layers anew; `average`: average the original pairwise scores",
    )
