from typing import Any, Dict, List, Optional

import numpy

from evalxai.src.evalmetrics.reliability_metrics import GRANULAR_METRICS, Partition
from evalxai.src.harness.run_artifacts import ModelArtifacts, RunArtifacts

BOX_STATISTICS = ("min", "q1", "median", "q3", "max")


def five_numbers(values: numpy.ndarray) -> Dict[str, Optional[float]]:
    if values.shape[0] == 0:
        return {name: None for name in BOX_STATISTICS}
    quantiles = numpy.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0])
    return {name: float(value) for name, value in zip(BOX_STATISTICS, quantiles)}


def _mean(values: List[Optional[float]]) -> Optional[float]:
    present = [value for value in values if value is not None]
    return None if not present else float(numpy.mean(present))


def _metric_value(model: ModelArtifacts, metric: str, partition: Partition, alpha: float, run: int) -> Optional[float]:
    report = next(report for report in model.reports if report.alpha == alpha and report.run == run)
    if metric == "%Reversed":
        return report.reversed_correct if partition is Partition.CORRECT else report.reversed_wrong
    return report.granular.value(metric, partition)


class PlotSeriesBuilder:
    """
    the data behind the charts: alpha against metric lines with one series per (model, partition), the
    metric averaged over runs, and five number summaries of the prob diff values per model, alpha and run
    """

    def build(self, artifacts: RunArtifacts) -> Dict[str, Any]:
        alphas = list(artifacts.alphas)
        lines: Dict[str, List[Dict[str, Any]]] = {}
        metrics = [("%Reversed", (Partition.CORRECT, Partition.WRONG))]
        metrics += [(metric, tuple(Partition)) for metric in GRANULAR_METRICS]
        for metric, partitions in metrics:
            lines[metric] = [
                {
                    "model": model.name,
                    "partition": partition.value,
                    "x": alphas,
                    "y": [
                        _mean([_metric_value(model, metric, partition, alpha, run) for run in range(1, model.runs + 1)])
                        for alpha in alphas
                    ],
                }
                for model in artifacts.models
                for partition in partitions
            ]
        boxplots = [
            {
                "model": model.name,
                "alpha": alpha,
                "run": run,
                **five_numbers(self._prob_diff_values(model, alpha, run)),
            }
            for model in artifacts.models
            for alpha in alphas
            for run in range(1, model.runs + 1)
        ]
        return {"alphas": alphas, "lines": lines, "boxplots": {"%Prob_diff": boxplots}}

    @staticmethod
    def _prob_diff_values(model: ModelArtifacts, alpha: float, run: int) -> numpy.ndarray:
        report = next(report for report in model.reports if report.alpha == alpha and report.run == run)
        return report.prob_diff.values


def build_plot_series(artifacts: RunArtifacts) -> Dict[str, Any]:
    return PlotSeriesBuilder().build(artifacts)
