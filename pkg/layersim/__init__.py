from dotenv import load_dotenv

load_dotenv()

from layersim.utils.imports import _IS_TORCH_GREATER_EQUAL_2_0

if not _IS_TORCH_GREATER_EQUAL_2_0:
    raise ModuleNotFoundError(_IS_TORCH_GREATER_EQUAL_2_0)

from layersim.algos.embed import embed as embed
from layersim.algos.generate import generate as generate
from layersim.algos.reduce import reduce as reduce
from layersim.algos.reproduce import reproduce as reproduce
from layersim.algos.robustness import robustness as robustness
from layersim.algos.sim import sim as sim

__version__ = "0.1.0"
