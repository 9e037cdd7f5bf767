"""Scaled-down recipes of the reference experiments.

Every recipe returns an `ExperimentReport`: the data files it produces, keyed by file name, and a
key=value summary with the trend statistics the recipe is meant to exhibit. Nothing is plotted.
"""
from collections import OrderedDict
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Literal, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy import stats

from layersim.algos.embed.embedding import EmbedConfig
from layersim.algos.generate.ba import DEFAULT_REWIRING_PROBABILITIES, edge_overlap, rewiring_ladder
from layersim.algos.generate.gmm import GmmParams, generate_gmm
from layersim.algos.reduce.reduction import ReductionReport, greedy_reduce
from layersim.algos.robustness.attack import AttackParams, omega_score
from layersim.algos.sim.similarity import DEFAULT_OMEGA, eatsim_from_embeddings, embed_layers, similarity_matrix
from layersim.utils.exceptions import ValidationError
from layersim.utils.utils import substream

Experiment = Literal["fig2a", "fig2b", "fig3", "fig5"]
Sweep = Literal["angular", "radial"]
StepCallback = Callable[[Dict[str, float], int], None]

EXPERIMENTS = ("fig2a", "fig2b", "fig3", "fig5")
SWEEP_STREAM = 12
DEFAULT_SWEEP_VALUES = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    name: str
    files: Dict[str, Union[pd.DataFrame, str]] = field(default_factory=dict)
    summary: "OrderedDict[str, object]" = field(default_factory=OrderedDict)


def _correlation(fn, x: Sequence[float], y: Sequence[float]) -> float:
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return float("nan")
    return float(fn(x, y)[0])


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation, NaN when either sequence is constant."""
    return _correlation(stats.spearmanr, x, y)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    return _correlation(stats.pearsonr, x, y)


def rewiring_decay(
    n_nodes: int = 1000,
    m_attach: int = 2,
    probabilities: Sequence[float] = DEFAULT_REWIRING_PROBABILITIES,
    cfg: Optional[EmbedConfig] = None,
    omega: float = DEFAULT_OMEGA,
    seed: int = 42,
    on_step: Optional[StepCallback] = None,
) -> ExperimentReport:
    """Similarity between a BA network and each of its rewired copies, one row per probability."""
    cfg = cfg if cfg is not None else EmbedConfig(seed=seed)
    net = rewiring_ladder(n_nodes, m_attach, probabilities, seed)
    embeddings = embed_layers(net.layers, cfg)
    rows = []
    for k, p in enumerate(probabilities, start=1):
        result = eatsim_from_embeddings(embeddings[0], embeddings[k], omega, (0, k))
        overlap = edge_overlap(net.layers[0], net.layers[k])
        rows.append({"p": p, "eatsim": result.eatsim, "ped": result.ped, "aed": result.aed, "overlap": overlap})
        if on_step is not None:
            on_step({"Reproduce/eatsim": result.eatsim, "Reproduce/overlap": overlap}, k)
    frame = pd.DataFrame(rows, columns=["p", "eatsim", "ped", "aed", "overlap"])
    summary = OrderedDict(
        experiment="fig2a",
        n_nodes=n_nodes,
        m_attach=m_attach,
        omega=omega,
        seed=seed,
        spearman_p_eatsim=f"{spearman(frame['p'], frame['eatsim']):.12g}",
        spearman_p_overlap=f"{spearman(frame['p'], frame['overlap']):.12g}",
    )
    return ExperimentReport("fig2a", {"fig2a_rewiring.csv": frame}, summary)


def ladder_heatmap(
    n_nodes: int = 1000,
    m_attach: int = 2,
    probabilities: Sequence[float] = DEFAULT_REWIRING_PROBABILITIES,
    cfg: Optional[EmbedConfig] = None,
    omega: float = DEFAULT_OMEGA,
    seed: int = 42,
    on_step: Optional[StepCallback] = None,
) -> ExperimentReport:
    """All pairwise similarities of the rewiring ladder (the original plus its rewired copies)."""
    cfg = cfg if cfg is not None else EmbedConfig(seed=seed)
    net = rewiring_ladder(n_nodes, m_attach, probabilities, seed)
    matrix = similarity_matrix(net, cfg, omega)
    original_row = matrix.eatsim[0, 1:]
    if on_step is not None:
        on_step({"Reproduce/mean_eatsim": float(matrix.to_frame()["eatsim"].mean())}, 0)
    summary = OrderedDict(
        experiment="fig2b",
        n_layers=net.n_layers,
        n_nodes=n_nodes,
        omega=omega,
        seed=seed,
        spearman_original_row=f"{spearman(list(probabilities), original_row):.12g}",
    )
    files = {"fig2b_grid.csv": matrix.grid_frame(), "fig2b_pairs.csv": matrix.to_frame()}
    return ExperimentReport("fig2b", files, summary)


def sweep_seeds(seed: int, n_seeds: int):
    return [int(substream(seed, SWEEP_STREAM, s).integers(2**31)) for s in range(n_seeds)]


def gmm_sweep(
    base: Optional[GmmParams] = None,
    sweep: Sweep = "angular",
    values: Sequence[float] = DEFAULT_SWEEP_VALUES,
    n_seeds: int = 5,
    cfg: Optional[EmbedConfig] = None,
    omega: float = DEFAULT_OMEGA,
    attack: Optional[AttackParams] = None,
    robustness: bool = True,
    seed: int = 42,
    on_step: Optional[StepCallback] = None,
) -> ExperimentReport:
    """Two-layer GMM networks over a grid of angular (or radial) correlations, the other kept at 1.

    Each grid point is repeated on `n_seeds` networks; every row reports the EATSim of the two layers
    and, with `robustness`, the targeted-attack robustness scores of the same network.
    """
    if sweep not in ("angular", "radial"):
        raise ValidationError(f"Unknown sweep `{sweep}`, expected `angular` or `radial`")
    if n_seeds < 1:
        raise ValidationError(f"`n_seeds` must be at least 1, got: {n_seeds}")
    if not values:
        raise ValidationError("The sweep needs at least one correlation value")
    base = base if base is not None else GmmParams()
    cfg = cfg if cfg is not None else EmbedConfig(seed=seed)
    attack = attack if attack is not None else AttackParams(seed=seed)
    # All parameter points are validated before the first network is built
    points = []
    for value in values:
        for network_seed in sweep_seeds(seed, n_seeds):
            corr = {"angular_corr": value, "radial_corr": 1.0}
            if sweep == "radial":
                corr = {"angular_corr": 1.0, "radial_corr": value}
            points.append(replace(base, seed=network_seed, **corr))

    rows = []
    for step, params in enumerate(points):
        net = generate_gmm(params, n_layers=2)
        embeddings = embed_layers(net.layers, cfg)
        result = eatsim_from_embeddings(embeddings[0], embeddings[1], omega)
        row = {"g": params.angular_corr, "v": params.radial_corr, "seed": params.seed, "eatsim": result.eatsim}
        if robustness:
            scores = omega_score(net, replace(attack, seed=params.seed))
            row.update(delta_n=scores.delta_n, delta_n_rs=scores.delta_n_rs, omega=scores.omega)
        rows.append(row)
        if on_step is not None:
            on_step({f"Reproduce/{k}": float(v) for k, v in row.items() if k not in ("g", "v", "seed")}, step)

    columns = ["g", "v", "seed", "eatsim"] + (["delta_n", "delta_n_rs", "omega"] if robustness else [])
    frame = pd.DataFrame(rows, columns=columns)
    swept = "g" if sweep == "angular" else "v"
    per_seed = [spearman(group[swept], group["eatsim"]) for _, group in frame.groupby("seed", sort=False)]
    trend = float(np.nanmean(per_seed)) if np.any(np.isfinite(per_seed)) else float("nan")
    summary = OrderedDict(
        experiment="fig3",
        sweep=sweep,
        n_nodes=base.n_nodes,
        mean_degree=base.mean_degree,
        gamma=base.gamma,
        temperature=base.temperature,
        n_seeds=n_seeds,
        omega=omega,
        seed=seed,
        spearman_corr_eatsim=f"{trend:.12g}",
    )
    if robustness:
        summary["reshuffle_count"] = attack.reshuffle_count
        summary["pearson_eatsim_omega"] = f"{pearson(frame['eatsim'], frame['omega']):.12g}"
    return ExperimentReport("fig3", {f"fig3_{sweep}.csv": frame}, summary)


def cumulative_decrease(report: ReductionReport, merges: int = 5) -> float:
    """Drop of q over the first `merges` merges."""
    last = min(merges, len(report.q_trajectory) - 1)
    return report.q_trajectory[0] - report.q_trajectory[last]


def ladder_reduction(
    n_nodes: int = 1000,
    m_attach: int = 2,
    probabilities: Sequence[float] = DEFAULT_REWIRING_PROBABILITIES,
    cfg: Optional[EmbedConfig] = None,
    omega: float = DEFAULT_OMEGA,
    seed: int = 42,
    on_step: Optional[StepCallback] = None,
) -> Dict[str, ReductionReport]:
    """EATSim- and JSD-driven greedy reductions of the rewiring ladder."""
    cfg = cfg if cfg is not None else EmbedConfig(seed=seed)
    net = rewiring_ladder(n_nodes, m_attach, probabilities, seed)
    reports = {}
    for metric in ("eatsim", "jsd"):
        reports[metric] = greedy_reduce(net, metric, cfg, omega)
        if on_step is not None:
            for k, q in enumerate(reports[metric].q_trajectory):
                on_step({f"Reproduce/q_{metric}": q}, k)
    return reports


def reduction_summary(reports: Dict[str, ReductionReport], seed: int) -> "OrderedDict[str, object]":
    summary = OrderedDict(experiment="fig5", seed=seed)
    for metric, report in reports.items():
        q = np.asarray(report.q_trajectory)
        summary[f"{metric}_optimal_m"] = report.optimal_m
        summary[f"{metric}_max_q"] = f"{q.max():.12g}"
        summary[f"{metric}_non_increasing"] = bool(np.all(np.diff(q) <= 1e-12))
        summary[f"{metric}_decrease_first_5"] = f"{cumulative_decrease(report):.12g}"
    return summary
