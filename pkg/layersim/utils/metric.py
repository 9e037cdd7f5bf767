from typing import Dict, Iterator, Mapping, Optional

import torch
from torchmetrics import Metric


class MetricAggregatorException(Exception):
    """Raised on unknown or duplicated metric names"""


class MetricAggregator:
    """Named torchmetrics metrics updated during training and reduced once per epoch.

    Names follow the `<Section>/<metric>` convention of the TensorBoard logs, e.g. `Loss/skipgram_loss`.
    """

    def __init__(self, metrics: Optional[Mapping[str, Metric]] = None):
        self.metrics: Dict[str, Metric] = dict(metrics) if metrics is not None else {}

    def __contains__(self, name: str) -> bool:
        return name in self.metrics

    def __iter__(self) -> Iterator[str]:
        return iter(self.metrics)

    def add(self, name: str, metric: Metric) -> None:
        if name in self.metrics:
            raise MetricAggregatorException(f"Metric {name} already exists")
        self.metrics[name] = metric

    @torch.no_grad()
    def update(self, name: str, value: torch.Tensor) -> None:
        try:
            metric = self.metrics[name]
        except KeyError:
            raise MetricAggregatorException(f"Metric {name} does not exist") from None
        metric.update(value)

    def reset(self) -> None:
        for metric in self.metrics.values():
            metric.reset()

    @torch.no_grad()
    def compute(self) -> Dict[str, float]:
        """Reduced values of the metrics updated since the last reset; the others are left out."""
        return {name: metric.compute().item() for name, metric in self.metrics.items() if metric.update_called}

    def flush(self) -> Dict[str, float]:
        """`compute` then `reset`."""
        values = self.compute()
        self.reset()
        return values
