from dataclasses import dataclass
from typing import Optional, Tuple

from layersim.algos.args import InputArgs, StandardArgs
from layersim.algos.robustness.attack import AttackParams
from layersim.utils.parser import Arg


@dataclass
class AttackArgs(StandardArgs):
    alpha: float = Arg(default=0.4, help="the upper GMCC threshold is alpha M")
    beta: float = Arg(default=0.5, help="the attack stops once the GMCC is below M^beta")
    reshuffle_count: int = Arg(default=10, help="the number of reshuffled counterparts averaged in dN_rs")
    gmcc_only: bool = Arg(default=False, help="whether to attack current GMCC members only")

    def attack_params(self) -> AttackParams:
        return AttackParams(
            alpha=self.alpha,
            beta=self.beta,
            reshuffle_count=self.reshuffle_count,
            seed=self.seed,
            gmcc_only=self.gmcc_only,
        )


@dataclass
class RobustnessArgs(InputArgs, AttackArgs):
    layers: Optional[Tuple[int, ...]] = Arg(
        default=None, help="the two 1-based layer indices to attack, required when the input has more layers"
    )
    save_traces: bool = Arg(default=False, help="whether to write the per-step trace of every attack")
