import os
import subprocess
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
ENTRY_POINT = os.path.join(ROOT, "layersim.py")


def layersim(*args, cwd):
    return subprocess.run(
        [sys.executable, ENTRY_POINT, *args], cwd=cwd, capture_output=True, text=True, env={**os.environ}
    )


@pytest.fixture()
def three_layers(tmp_path):
    lines = []
    for i in range(10):
        lines += [f"1 {i} {(i + 1) % 10}", f"2 {i} {(i + 3) % 10}", f"3 0 {i + 1}"]
    path = tmp_path / "three.edges"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture()
def two_layers(tmp_path):
    lines = []
    for i in range(10):
        lines += [f"1 {i} {(i + 1) % 10}", f"2 {i} {(i + 2) % 10}"]
    path = tmp_path / "two.edges"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


FAST = ["--dim=4", "--walks_per_node=2", "--walk_length=6", "--window=2", "--epochs=1", "--log_tensorboard=False"]


def test_help(tmp_path):
    result = layersim("--help", cwd=tmp_path)
    assert result.returncode == 0
    for command in ("embed", "generate", "reduce", "reproduce", "robustness", "sim"):
        assert command in result.stdout


@pytest.mark.parametrize(
    "args",
    [["unknown_command"], ["sim", "--unknown_flag", "1"], ["sim", "--input", "missing.edges"], ["sim", "--omega=x"]],
)
def test_usage_errors(tmp_path, args):
    result = layersim(*args, cwd=tmp_path)
    assert result.returncode == 1


def test_validation_error(tmp_path, three_layers):
    result = layersim("robustness", f"--input={three_layers}", "--log_tensorboard=False", cwd=tmp_path)
    assert result.returncode == 2
    assert result.stderr.startswith("error:")
    result = layersim("sim", f"--input={three_layers}", "--omega=1.5", cwd=tmp_path)
    assert result.returncode == 2


def test_malformed_input(tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("1 0 1\n1 0\n")
    result = layersim("sim", f"--input={path}", cwd=tmp_path)
    assert result.returncode == 2
    assert ":2:" in result.stderr


def test_sim_is_reproducible(tmp_path, two_layers):
    outputs = []
    for run in ("a", "b"):
        result = layersim("sim", f"--input={two_layers}", f"--output_dir={run}", *FAST, cwd=tmp_path)
        assert result.returncode == 0, result.stderr
        outputs.append((tmp_path / run / "two_sim.csv").read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].decode().splitlines()) == 2


def test_dry_run(tmp_path, two_layers):
    result = layersim("sim", f"--input={two_layers}", "--dry_run", cwd=tmp_path)
    assert result.returncode == 0
    assert "arguments are valid" in result.stdout
    assert os.listdir(tmp_path) == ["two.edges"]


def test_generate(tmp_path):
    result = layersim("generate", "--model=gmm", "--n_nodes=100", "--log_tensorboard=False", cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    assert sorted(os.listdir(tmp_path / "outputs")) == ["gmm.edges", "gmm.edges.meta", "gmm.edges.nodes"]


def test_reproduce_dry_run(tmp_path):
    assert layersim("reproduce", "--experiment=fig5", "--dry_run", cwd=tmp_path).returncode == 0
    assert layersim("reproduce", "--dry_run", cwd=tmp_path).returncode == 1
    assert layersim("reproduce", "--experiment=fig3", "--temperature=1.5", "--dry_run", cwd=tmp_path).returncode == 2
