import os
import tempfile
from typing import Callable, Mapping, Union

import numpy as np
import pandas as pd
import torch

PathLike = Union[str, "os.PathLike[str]"]


def seed_sequence(seed: int, *keys: int) -> np.random.SeedSequence:
    """The named substream `keys` of the global `seed`.

    Every random draw of layersim comes from one of these substreams, so results depend on the
    seed and on the keys only, never on the order in which the substreams are consumed.
    """
    return np.random.SeedSequence([int(seed) & 0xFFFFFFFF, *(int(k) for k in keys)])


def substream(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(seed, *keys))


def torch_generator(seed: int, *keys: int) -> torch.Generator:
    generator = torch.Generator(device="cpu")
    generator.manual_seed(int(seed_sequence(seed, *keys).generate_state(1, dtype=np.uint64)[0]) >> 1)
    return generator


def polynomial_decay(
    current_step: int,
    *,
    initial: float = 1.0,
    final: float = 0.0,
    max_decay_steps: int = 100,
    power: float = 1.0,
) -> float:
    if current_step > max_decay_steps or initial == final:
        return final
    else:
        return (initial - final) * ((1 - current_step / max_decay_steps) ** power) + final


def atomic_write(path: PathLike, write_fn: Callable[[str], None]) -> str:
    """Call `write_fn` on a temporary file next to `path`, then move it over `path`.

    Returns:
        the final path.
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp_", dir=directory)
    os.close(fd)
    try:
        write_fn(tmp_path)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    return path


def atomic_write_text(path: PathLike, text: str) -> str:
    def _write(tmp_path: str) -> None:
        with open(tmp_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)

    return atomic_write(path, _write)


def atomic_write_frame(path: PathLike, frame: pd.DataFrame) -> str:
    return atomic_write(path, lambda tmp_path: frame.to_csv(tmp_path, index=False, float_format="%.12g"))


def format_metadata(metadata: Mapping[str, object]) -> str:
    """Render a key=value text block, one entry per line, in insertion order."""
    return "".join(f"{k}={v}\n" for k, v in metadata.items())


def parse_metadata(text: str) -> dict:
    metadata = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if sep:
            metadata[key.strip()] = value.strip()
    return metadata
