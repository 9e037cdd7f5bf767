from dataclasses import dataclass
from typing import Literal, Optional, Tuple

import pytest

from layersim.utils.exceptions import ParseError, UsageError
from layersim.utils.parser import Arg, DataclassArgumentParser, read_config_file


@dataclass
class ToyArgs:
    name: str = Arg(default="toy", help="a name")
    steps: int = Arg(default=3)
    omega: float = Arg(default=0.5)
    metric: Literal["eatsim", "jsd"] = Arg(default="eatsim")
    verbose: bool = Arg(default=False)
    grid: bool = Arg(default=True)
    layers: Optional[Tuple[int, ...]] = Arg(default=None)
    limit: Optional[int] = Arg(default=None)


def parse(args):
    return DataclassArgumentParser(ToyArgs, prog="toy").parse_args_into_dataclasses(args)[0]


def test_defaults():
    assert parse([]) == ToyArgs()


def test_typed_values():
    args = parse(["--steps", "7", "--omega=0.25", "--metric", "jsd", "--layers", "1", "3", "--limit", "4"])
    assert (args.steps, args.omega, args.metric, args.layers, args.limit) == (7, 0.25, "jsd", [1, 3], 4)


def test_boolean_flags():
    assert parse(["--verbose"]).verbose is True
    assert parse(["--verbose", "False"]).verbose is False
    assert parse(["--no_grid"]).grid is False
    assert parse(["--grid=no"]).grid is False


@pytest.mark.parametrize("args", [["--unknown", "1"], ["--metric", "nmi"], ["--steps", "x"], ["extra"]])
def test_usage_errors(args):
    with pytest.raises(UsageError):
        parse(args)


def test_config_file_precedence(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("# toy run\nsteps = 9\nomega=0.1\nlayers=2 4\n\nverbose=true\n")
    args = parse(["--config", str(config), "--omega", "0.9"])
    assert (args.steps, args.omega, args.layers, args.verbose) == (9, 0.9, [2, 4], True)


def test_later_config_files_win(tmp_path):
    first, second = tmp_path / "a.cfg", tmp_path / "b.cfg"
    first.write_text("steps=1\nname=first\n")
    second.write_text("steps=2\n")
    args = parse([f"--config={first}", "--config", str(second)])
    assert (args.steps, args.name) == (2, "first")


def test_config_file_errors(tmp_path):
    with pytest.raises(UsageError):
        read_config_file(str(tmp_path / "missing.cfg"))
    bad = tmp_path / "bad.cfg"
    bad.write_text("steps=1\nnot a pair\n")
    with pytest.raises(ParseError) as info:
        read_config_file(str(bad))
    assert info.value.line_number == 2
    with pytest.raises(UsageError):
        parse(["--config"])
