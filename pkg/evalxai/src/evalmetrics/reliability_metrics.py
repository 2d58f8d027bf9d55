import enum
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy

from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.explain.rule import PredictedClass

GRANULAR_METRICS = ("PCPD", "PCPI", "NCPD", "NCPI")


class Partition(enum.Enum):
    CORRECT = "Cort."
    WRONG = "Wrng."
    OVERALL = "All"

    def contains(self, outcome: InstanceOutcome) -> bool:
        if self is Partition.CORRECT:
            return outcome.correct
        if self is Partition.WRONG:
            return not outcome.correct
        return True


class PartitionBy(enum.Enum):
    """which class decides whether an outcome counts towards the positive or the negative granular metrics"""

    PREDICTED = "predicted"
    TRUE = "true"

    @staticmethod
    def from_token(token: str) -> "PartitionBy":
        for partition_by in PartitionBy:
            if partition_by.value == token:
                return partition_by
        raise ValueError(f"unknown partition_by {token!r}, expected predicted or true")

    def class_of(self, outcome: InstanceOutcome) -> PredictedClass:
        if self is PartitionBy.PREDICTED:
            return outcome.predicted_class
        return PredictedClass.from_label(outcome.true_label)


def _evaluated(outcomes: Sequence[InstanceOutcome]) -> List[InstanceOutcome]:
    return [outcome for outcome in outcomes if not outcome.explanation_failed]


def _percentage(hits: int, total: int) -> Optional[float]:
    return None if total == 0 else 100.0 * hits / total


def percent_reversed(outcomes: Sequence[InstanceOutcome], partition: Partition) -> Optional[float]:
    """

    share of the partition whose flip variant changes the predicted class, failed explanations excluded
    :return: a percentage, None for an empty partition
             <Optional[float]>
    """
    members = [outcome for outcome in _evaluated(outcomes) if partition.contains(outcome)]
    return _percentage(sum(outcome.flipped for outcome in members), len(members))


class ProbDiff:
    """
    signed per instance risk change of the flip variant: original - green for positive predictions and
    red - original for negative ones. negative values are reliability violations.
    """

    def __init__(self, instance_ids: Sequence[str], values: Sequence[float]):
        if len(instance_ids) != len(values):
            raise ValueError(f"expected {len(instance_ids)} values, got {len(values)}")
        self._instance_ids = list(instance_ids)
        self._values = numpy.array(values, dtype=float)

    @property
    def instance_ids(self) -> List[str]:
        return list(self._instance_ids)

    @property
    def values(self) -> numpy.ndarray:
        return self._values.copy()

    def as_series(self) -> Dict[str, float]:
        return {instance_id: float(value) for instance_id, value in zip(self._instance_ids, self._values)}

    def __len__(self) -> int:
        return self._values.shape[0]

    @property
    def negative_count(self) -> int:
        return int(numpy.sum(self._values < 0))

    def mean(self) -> Optional[float]:
        return None if len(self) == 0 else float(numpy.mean(self._values))

    def quartiles(self) -> Optional[List[float]]:
        if len(self) == 0:
            return None
        return [float(value) for value in numpy.quantile(self._values, [0.25, 0.5, 0.75])]

    def summary(self) -> Dict[str, Any]:
        quartiles = self.quartiles()
        return {
            "count": len(self),
            "mean": self.mean(),
            "q1": None if quartiles is None else quartiles[0],
            "median": None if quartiles is None else quartiles[1],
            "q3": None if quartiles is None else quartiles[2],
            "negative_count": self.negative_count,
        }


def prob_diff(outcomes: Sequence[InstanceOutcome]) -> ProbDiff:
    instance_ids = []
    values = []
    for outcome in _evaluated(outcomes):
        if outcome.predicted_class is PredictedClass.POSITIVE:
            value = outcome.original_risk - outcome.green_risk  # type: ignore
        else:
            value = outcome.red_risk - outcome.original_risk  # type: ignore
        instance_ids.append(outcome.instance_id)
        values.append(value)
    return ProbDiff(instance_ids, values)


_GRANULAR_RULES: Dict[str, Callable[[InstanceOutcome], bool]] = {
    "PCPD": lambda outcome: outcome.green_risk < outcome.original_risk,  # type: ignore
    "PCPI": lambda outcome: outcome.red_risk > outcome.original_risk,  # type: ignore
    "NCPD": lambda outcome: outcome.green_risk < outcome.original_risk,  # type: ignore
    "NCPI": lambda outcome: outcome.red_risk > outcome.original_risk,  # type: ignore
}


class GranularMetrics:
    """PCPD, PCPI, NCPD and NCPI as percentages per partition, with their denominators"""

    def __init__(
        self,
        values: Dict[str, Dict[Partition, Optional[float]]],
        denominators: Dict[str, Dict[Partition, int]],
    ):
        self._values = values
        self._denominators = denominators

    def value(self, metric: str, partition: Partition) -> Optional[float]:
        return self._values[metric][partition]

    def denominator(self, metric: str, partition: Partition) -> int:
        return self._denominators[metric][partition]

    def to_dict(self) -> Dict[str, Dict[str, object]]:
        return {
            metric: {
                partition.name.lower(): {
                    "value": self._values[metric][partition],
                    "denominator": self._denominators[metric][partition],
                }
                for partition in Partition
            }
            for metric in GRANULAR_METRICS
        }


def granular(
    outcomes: Sequence[InstanceOutcome], partition_by: PartitionBy = PartitionBy.PREDICTED
) -> GranularMetrics:
    """

    strict inequalities: a variant whose risk equals the original risk counts as a failure
    :return: the four granular metrics split into correct, wrong and overall
             <GranularMetrics>
    """
    evaluated = _evaluated(outcomes)
    values: Dict[str, Dict[Partition, Optional[float]]] = {}
    denominators: Dict[str, Dict[Partition, int]] = {}
    for metric in GRANULAR_METRICS:
        group = PredictedClass.POSITIVE if metric.startswith("P") else PredictedClass.NEGATIVE
        rule = _GRANULAR_RULES[metric]
        values[metric] = {}
        denominators[metric] = {}
        for partition in Partition:
            members = [
                outcome
                for outcome in evaluated
                if partition.contains(outcome) and partition_by.class_of(outcome) is group
            ]
            denominators[metric][partition] = len(members)
            values[metric][partition] = _percentage(sum(rule(outcome) for outcome in members), len(members))
    return GranularMetrics(values, denominators)
