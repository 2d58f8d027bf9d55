import itertools
from typing import Any, Dict, List, Sequence, Set

from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.rule import Orientation


def jaccard(first: Set[str], second: Set[str]) -> float:
    union = first | second
    if not union:
        return 1.0
    return len(first & second) / len(union)


class StabilityReport:
    def __init__(self, instance_count: int, identical_count: int, contradiction_count: int, mean_jaccard: float):
        self._instance_count = instance_count
        self._identical_count = identical_count
        self._contradiction_count = contradiction_count
        self._mean_jaccard = mean_jaccard

    @property
    def instance_count(self) -> int:
        return self._instance_count

    @property
    def identical_fraction(self) -> float:
        return 1.0 if self._instance_count == 0 else self._identical_count / self._instance_count

    @property
    def contradiction_count(self) -> int:
        return self._contradiction_count

    @property
    def mean_jaccard(self) -> float:
        return self._mean_jaccard

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance_count": self._instance_count,
            "identical_fraction": self.identical_fraction,
            "contradiction_count": self._contradiction_count,
            "mean_jaccard": self._mean_jaccard,
        }


def _contradicts(explanations: List[Explanation]) -> bool:
    orientations: Dict[str, Set[Orientation]] = {}
    for explanation in explanations:
        for rule in explanation.rules:
            orientations.setdefault(rule.feature, set()).add(rule.orientation)
    return any(len(seen) > 1 for seen in orientations.values())


def explanation_stability(runs: Sequence[Dict[str, Explanation]]) -> StabilityReport:
    """

    compares the explanations each run gave the same instances, over instance ids present in every run.
    an instance is identical when all runs ruled the same (feature, orientation) pairs and contradictory
    when a feature is ruled "<" in one run and ">" in another
    :return: identical fraction, contradiction count and mean pairwise jaccard of ruled feature sets
             <StabilityReport>
    """
    if not runs:
        return StabilityReport(0, 0, 0, 1.0)
    shared = set(runs[0])
    for run in runs[1:]:
        shared &= set(run)
    instance_ids = sorted(shared)

    identical = 0
    contradictions = 0
    similarities = []
    for instance_id in instance_ids:
        explanations = [run[instance_id] for run in runs]
        signatures = [explanation.rule_signature() for explanation in explanations]
        identical += all(signature == signatures[0] for signature in signatures)
        contradictions += _contradicts(explanations)
        for first, second in itertools.combinations(explanations, 2):
            similarities.append(jaccard(set(first.ruled_features()), set(second.ruled_features())))
    mean_jaccard = sum(similarities) / len(similarities) if similarities else 1.0
    return StabilityReport(len(instance_ids), identical, contradictions, mean_jaccard)
