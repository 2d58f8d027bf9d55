import math
from typing import List, Sequence, Set, Tuple

from evalxai.src.explain.rule import Orientation, PredictedClass, Rule


class Explanation:
    """
    a rule based local explanation of one prediction

    an empty rule list records that the explainer failed to produce an explanation for the instance.
    """

    def __init__(
        self,
        instance_id: str,
        predicted_class: PredictedClass,
        risk_score: float,
        rules: Sequence[Rule],
        explainer_id: str,
        run_seed: int,
    ):
        if not isinstance(predicted_class, PredictedClass):
            raise TypeError(f"predicted_class must be a PredictedClass, got {type(predicted_class).__name__}")
        risk_score = float(risk_score)
        if not math.isfinite(risk_score) or not 0.0 <= risk_score <= 1.0:
            raise ValueError(f"risk score must lie in [0, 1], got {risk_score}")
        seen: Set[str] = set()
        for rule in rules:
            if rule.feature in seen:
                raise ValueError(f"duplicate rule on feature {rule.feature} in explanation of {instance_id}")
            seen.add(rule.feature)
        self._instance_id = str(instance_id)
        self._predicted_class = predicted_class
        self._risk_score = risk_score
        self._rules = tuple(rules)
        self._explainer_id = explainer_id
        self._run_seed = int(run_seed)

    @property
    def instance_id(self) -> str:
        return self._instance_id

    @property
    def predicted_class(self) -> PredictedClass:
        return self._predicted_class

    @property
    def risk_score(self) -> float:
        return self._risk_score

    @property
    def rules(self) -> List[Rule]:
        return list(self._rules)

    @property
    def explainer_id(self) -> str:
        return self._explainer_id

    @property
    def run_seed(self) -> int:
        return self._run_seed

    @property
    def failed(self) -> bool:
        return len(self._rules) == 0

    def ruled_features(self) -> List[str]:
        return [rule.feature for rule in self._rules]

    def rule_signature(self) -> Set[Tuple[str, Orientation]]:
        return {(rule.feature, rule.orientation) for rule in self._rules}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Explanation):
            return False
        return (
            self._instance_id == other.instance_id
            and self._predicted_class is other.predicted_class
            and self._risk_score == other.risk_score
            and list(self._rules) == other.rules
            and self._explainer_id == other.explainer_id
            and self._run_seed == other.run_seed
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self._instance_id, self._predicted_class, self._risk_score, self._rules, self._run_seed))

    def __str__(self) -> str:
        rules = ", ".join(str(rule) for rule in self._rules) if self._rules else "<no explanation>"
        return (
            f"{Explanation.__name__}: instance={self._instance_id}, {self._predicted_class.value} "
            f"risk={self._risk_score!r}, rules=[{rules}], explainer={self._explainer_id}, seed={self._run_seed}"
        )

    def __repr__(self) -> str:
        return self.__str__()
