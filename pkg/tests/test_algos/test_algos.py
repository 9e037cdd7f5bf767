import importlib
import os
import sys
from unittest import mock

import pandas as pd
import pytest

from layersim.algos.generate.ba import generate_ba
from layersim.data.io import save_multiplex
from layersim.data.multiplex import MultiplexNetwork
from layersim.utils.exceptions import UsageError, ValidationError
from layersim.utils.utils import parse_metadata

FAST_EMBEDDING = [
    "--dim=8",
    "--walks_per_node=4",
    "--walk_length=8",
    "--window=3",
    "--epochs=1",
    "--batch_size=64",
]


@pytest.fixture()
def standard_args(tmp_path):
    return [f"--output_dir={tmp_path / 'outputs'}", f"--root_dir={tmp_path / 'logs'}", "--run_name=test"]


@pytest.fixture()
def multiplex_file(tmp_path):
    """Three layers over 12 nodes: two rings and a star."""
    lines = []
    for i in range(12):
        lines.append(f"1 {i} {(i + 1) % 12}")
        lines.append(f"2 {i} {(i + 1) % 12}")
        lines.append(f"3 0 {i}" if i else "3 0 11")
    path = tmp_path / "toy.edges"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def run_task(name: str, args):
    task = importlib.import_module(f"layersim.algos.{name}.{name}")
    with mock.patch.object(sys, "argv", [task.__file__] + args):
        for command in task.__all__:
            if command == "main":
                task.__dict__[command]()


def test_sim(standard_args, multiplex_file, tmp_path):
    run_task("sim", standard_args + FAST_EMBEDDING + [f"--input={multiplex_file}", "--grid"])
    frame = pd.read_csv(tmp_path / "outputs" / "toy_sim.csv")
    assert list(frame.columns) == ["layer_i", "layer_j", "ped", "aed", "D", "eatsim"]
    assert len(frame) == 3
    assert frame["eatsim"].between(0, 1).all()
    grid = pd.read_csv(tmp_path / "outputs" / "toy_eatsim_grid.csv", index_col=0)
    assert grid.shape == (3, 3)
    assert os.path.isfile(tmp_path / "logs" / "test" / "version_0" / "args.json")


def test_sim_without_tensorboard(standard_args, multiplex_file, tmp_path):
    run_task("sim", standard_args + FAST_EMBEDDING + [f"--input={multiplex_file}", "--log_tensorboard=False"])
    assert os.path.isfile(tmp_path / "outputs" / "toy_sim.csv")
    assert not os.path.exists(tmp_path / "logs")


def test_embed(standard_args, multiplex_file, tmp_path):
    run_task("embed", standard_args + FAST_EMBEDDING + [f"--input={multiplex_file}"])
    for layer in (1, 2, 3):
        lines = (tmp_path / "outputs" / f"toy_layer{layer}.emb").read_text().splitlines()
        assert lines[0].startswith("# n=12 d=8 ")
        assert len(lines) == 13


def test_reduce(standard_args, multiplex_file, tmp_path):
    run_task("reduce", standard_args + FAST_EMBEDDING + [f"--input={multiplex_file}", "--metric=jsd"])
    q = pd.read_csv(tmp_path / "outputs" / "toy_jsd_q.csv")
    assert len(q) == 3
    grouping = (tmp_path / "outputs" / "toy_jsd_grouping.txt").read_text().splitlines()
    assert grouping[0].startswith("# m=")
    assert os.path.isfile(tmp_path / "outputs" / "toy_jsd_dendrogram.txt")


def test_robustness_needs_a_pair(standard_args, multiplex_file):
    with pytest.raises(ValidationError):
        run_task("robustness", standard_args + [f"--input={multiplex_file}"])
    with pytest.raises(UsageError):
        run_task("robustness", standard_args + [f"--input={multiplex_file}", "--layers", "1", "4"])


def test_robustness(standard_args, tmp_path):
    layer = generate_ba(200, 2, seed=1)
    path = save_multiplex(MultiplexNetwork((layer, layer), ("a", "b")), tmp_path / "toy.edges")
    args = [f"--input={path}", "--reshuffle_count=2", "--save_traces"]
    run_task("robustness", standard_args + args)
    frame = pd.read_csv(tmp_path / "outputs" / "toy_robustness.csv")
    assert list(frame["replica"]) == ["original", "reshuffle_1", "reshuffle_2"]
    summary = parse_metadata((tmp_path / "outputs" / "toy_robustness.txt").read_text())
    assert summary["reshuffle_count"] == "2"
    original, reshuffled = frame["delta_n"][0], frame["delta_n"][1:].mean()
    assert float(summary["omega"]) == pytest.approx((original - reshuffled) / (original + reshuffled), abs=1e-9)
    assert len(os.listdir(tmp_path / "outputs" / "traces")) == 3


def test_generate(standard_args, tmp_path):
    output = str(tmp_path / "net.edges")
    args = ["--model=ba", "--n_nodes=50", "--rewire_probability=0.3", f"--output={output}"]
    run_task("generate", standard_args + args)
    assert os.path.isfile(output)
    assert len((tmp_path / "net.edges.nodes").read_text().splitlines()) == 50
    meta = parse_metadata((tmp_path / "net.edges.meta").read_text())
    assert (meta["model"], meta["n_nodes"], meta["n_layers"]) == ("ba", "50", "2")


def test_dry_run_writes_nothing(standard_args, multiplex_file, tmp_path):
    for name in ("sim", "embed", "reduce"):
        run_task(name, standard_args + [f"--input={multiplex_file}", "--dry_run"])
    run_task("reproduce", standard_args + ["--experiment=fig3", "--dry_run"])
    assert not os.path.exists(tmp_path / "outputs")
    assert not os.path.exists(tmp_path / "logs")


def test_reproduce_requires_an_experiment(standard_args):
    with pytest.raises(UsageError):
        run_task("reproduce", standard_args + ["--dry_run"])


def test_reproduce_fig2a(standard_args, tmp_path):
    args = FAST_EMBEDDING + ["--experiment=fig2a", "--n_nodes=40", "--probabilities", "0.2", "0.8"]
    run_task("reproduce", standard_args + args)
    directory = tmp_path / "outputs" / "fig2a"
    frame = pd.read_csv(directory / "fig2a_rewiring.csv")
    assert list(frame["p"]) == [0.2, 0.8]
    summary = parse_metadata((directory / "fig2a_summary.txt").read_text())
    assert summary["experiment"] == "fig2a"
