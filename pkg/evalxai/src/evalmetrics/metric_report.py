from typing import Any, Dict, List, Optional, Sequence

from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.evalmetrics.reliability_metrics import (
    GRANULAR_METRICS,
    GranularMetrics,
    Partition,
    PartitionBy,
    ProbDiff,
    granular,
    percent_reversed,
    prob_diff,
)

CSV_COLUMNS = ["model", "alpha", "run", "metric", "partition", "value", "denominator"]


class MetricReport:
    """the six reliability metrics of one model at one alpha in one run"""

    def __init__(
        self,
        model: str,
        alpha: float,
        run: int,
        reversed_correct: Optional[float],
        reversed_wrong: Optional[float],
        prob_diff_values: ProbDiff,
        granular_metrics: GranularMetrics,
        correct_count: int,
        wrong_count: int,
        failure_count: int,
        clamp_count: int = 0,
    ):
        for name, value in (("reversed_correct", reversed_correct), ("reversed_wrong", reversed_wrong)):
            if value is not None and not 0.0 <= value <= 100.0:
                raise ValueError(f"{name} must lie in [0, 100], got {value}")
        self._model = model
        self._alpha = float(alpha)
        self._run = int(run)
        self._reversed_correct = reversed_correct
        self._reversed_wrong = reversed_wrong
        self._prob_diff = prob_diff_values
        self._granular = granular_metrics
        self._correct_count = correct_count
        self._wrong_count = wrong_count
        self._failure_count = failure_count
        self._clamp_count = clamp_count

    @property
    def model(self) -> str:
        return self._model

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def run(self) -> int:
        return self._run

    @property
    def reversed_correct(self) -> Optional[float]:
        return self._reversed_correct

    @property
    def reversed_wrong(self) -> Optional[float]:
        return self._reversed_wrong

    @property
    def prob_diff(self) -> ProbDiff:
        return self._prob_diff

    @property
    def granular(self) -> GranularMetrics:
        return self._granular

    @property
    def correct_count(self) -> int:
        return self._correct_count

    @property
    def wrong_count(self) -> int:
        return self._wrong_count

    @property
    def failure_count(self) -> int:
        return self._failure_count

    @property
    def clamp_count(self) -> int:
        return self._clamp_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self._model,
            "alpha": self._alpha,
            "run": self._run,
            "reversed": {
                "correct": {"value": self._reversed_correct, "denominator": self._correct_count},
                "wrong": {"value": self._reversed_wrong, "denominator": self._wrong_count},
            },
            "prob_diff": {
                "summary": self._prob_diff.summary(),
                "values": self._prob_diff.as_series(),
            },
            "granular": self._granular.to_dict(),
            "failure_count": self._failure_count,
            "clamp_count": self._clamp_count,
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        """one row per metric and partition, partitions named Cort., Wrng. and All"""
        rows = [
            self._csv_row("%Reversed", Partition.CORRECT, self._reversed_correct, self._correct_count),
            self._csv_row("%Reversed", Partition.WRONG, self._reversed_wrong, self._wrong_count),
        ]
        summary = self._prob_diff.summary()
        for statistic in ("mean", "q1", "median", "q3", "negative_count"):
            metric = f"%Prob_diff_{statistic}"
            rows.append(self._csv_row(metric, Partition.OVERALL, summary[statistic], len(self._prob_diff)))
        for metric in GRANULAR_METRICS:
            for partition in Partition:
                rows.append(
                    self._csv_row(
                        metric,
                        partition,
                        self._granular.value(metric, partition),
                        self._granular.denominator(metric, partition),
                    )
                )
        return rows

    def _csv_row(self, metric: str, partition: Partition, value: Any, denominator: int) -> Dict[str, Any]:
        return {
            "model": self._model,
            "alpha": self._alpha,
            "run": self._run,
            "metric": metric,
            "partition": partition.value,
            "value": value,
            "denominator": denominator,
        }


class MetricReporter:
    def __init__(self, partition_by: PartitionBy = PartitionBy.PREDICTED):
        self._partition_by = partition_by

    def report(self, outcomes: Sequence[InstanceOutcome], model: str, alpha: float, run: int) -> MetricReport:
        evaluated = [outcome for outcome in outcomes if not outcome.explanation_failed]
        return MetricReport(
            model,
            alpha,
            run,
            percent_reversed(outcomes, Partition.CORRECT),
            percent_reversed(outcomes, Partition.WRONG),
            prob_diff(outcomes),
            granular(outcomes, self._partition_by),
            sum(outcome.correct for outcome in evaluated),
            sum(not outcome.correct for outcome in evaluated),
            len(outcomes) - len(evaluated),
            sum(1 for outcome in evaluated if outcome.clamped),
        )
