from dataclasses import dataclass
from typing import Literal, Optional, Tuple

from layersim.algos.generate.ba import DEFAULT_REWIRING_PROBABILITIES
from layersim.algos.generate.gmm import GmmParams
from layersim.algos.reproduce.experiments import DEFAULT_SWEEP_VALUES
from layersim.algos.robustness.args import AttackArgs
from layersim.algos.sim.args import SimArgs
from layersim.utils.exceptions import UsageError
from layersim.utils.parser import Arg

LADDER_NODES = 1000
GMM_NODES = 2000


@dataclass
class ReproduceArgs(SimArgs, AttackArgs):
    experiment: Optional[Literal["fig2a", "fig2b", "fig3", "fig5"]] = Arg(
        default=None,
        help="`fig2a`: rewiring decay; `fig2b`: ladder heatmap; `fig3`: GMM sweep; `fig5`: ladder reduction",
    )
    n_nodes: Optional[int] = Arg(
        default=None, help=f"network size, defaults to {LADDER_NODES} for the ladder and {GMM_NODES} for the GMM"
    )
    m_attach: int = Arg(default=2, help="edges attached by every new node of the BA networks")
    probabilities: Tuple[float, ...] = Arg(
        default=DEFAULT_REWIRING_PROBABILITIES, help="the rewiring probabilities of the ladder copies"
    )
    sweep: Literal["angular", "radial"] = Arg(default="angular", help="the GMM correlation swept by `fig3`")
    values: Tuple[float, ...] = Arg(default=DEFAULT_SWEEP_VALUES, help="the correlation values swept by `fig3`")
    n_seeds: int = Arg(default=5, help="GMM networks generated per sweep value")
    mean_degree: float = Arg(default=6.0, help="GMM target mean degree")
    gamma: float = Arg(default=2.5, help="GMM power-law exponent of the hidden degrees")
    temperature: float = Arg(default=0.4, help="GMM temperature, in (0, 1)")
    robustness: bool = Arg(default=True, help="whether `fig3` also runs the targeted attacks")

    def check(self) -> None:
        super().check()
        if self.experiment is None:
            raise UsageError("`--experiment` is required, one of: fig2a, fig2b, fig3, fig5")
        self.gmm_params()
        self.attack_params()

    def network_size(self) -> int:
        if self.n_nodes is not None:
            return self.n_nodes
        return GMM_NODES if self.experiment == "fig3" else LADDER_NODES

    def gmm_params(self) -> GmmParams:
        return GmmParams(
            n_nodes=self.network_size(),
            mean_degree=self.mean_degree,
            gamma=self.gamma,
            temperature=self.temperature,
            seed=self.seed,
        )
