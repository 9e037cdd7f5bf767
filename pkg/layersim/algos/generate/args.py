from dataclasses import dataclass
from typing import Literal, Optional, Tuple

from layersim.algos.args import StandardArgs
from layersim.algos.generate.ba import DEFAULT_REWIRING_PROBABILITIES
from layersim.algos.generate.gmm import GmmParams
from layersim.utils.parser import Arg


@dataclass
class GenerateArgs(StandardArgs):
    model: Literal["ba", "ladder", "gmm"] = Arg(
        default="gmm", help="`ba`: one BA layer (two with --rewire_probability); `ladder`: BA rewiring ladder; `gmm`"
    )
    output: Optional[str] = Arg(default=None, help="the edge list to write, defaults to `<output_dir>/<model>.edges`")
    n_nodes: int = Arg(default=1000, help="the number of nodes")
    m_attach: int = Arg(default=2, help="edges attached by every new node of a BA network")
    rewire_probability: Optional[float] = Arg(
        default=None, help="with `--model ba`, add a second layer rewired with this probability"
    )
    probabilities: Tuple[float, ...] = Arg(
        default=DEFAULT_REWIRING_PROBABILITIES, help="the rewiring probabilities of the ladder copies"
    )
    mean_degree: float = Arg(default=6.0, help="GMM target mean degree")
    gamma: float = Arg(default=2.5, help="GMM power-law exponent of the hidden degrees")
    temperature: float = Arg(default=0.4, help="GMM temperature, in (0, 1)")
    angular_corr: float = Arg(default=1.0, help="GMM angular correlation g, in [0, 1]")
    radial_corr: float = Arg(default=1.0, help="GMM radial correlation v, in [0, 1]")
    n_layers: int = Arg(default=2, help="GMM layers, the ones after the first correlated with the first")

    def gmm_params(self) -> GmmParams:
        return GmmParams(
            n_nodes=self.n_nodes,
            mean_degree=self.mean_degree,
            gamma=self.gamma,
            temperature=self.temperature,
            angular_corr=self.angular_corr,
            radial_corr=self.radial_corr,
            seed=self.seed,
        )
