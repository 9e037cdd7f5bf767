from dataclasses import dataclass
from typing import Optional

from layersim.algos.embed.args import EmbedArgs
from layersim.algos.sim.similarity import DEFAULT_OMEGA, check_omega
from layersim.utils.parser import Arg


@dataclass
class SimArgs(EmbedArgs):
    omega: float = Arg(default=DEFAULT_OMEGA, help="weight of the PED loss in D = omega PED + (1 - omega) AED")
    grid: bool = Arg(default=False, help="whether to also write the L x L EATSim grid")
    sample_pairs: Optional[int] = Arg(
        default=None, help="estimate the PED loss on this many sampled node pairs instead of all pairs"
    )

    def check(self) -> None:
        check_omega(self.omega)
