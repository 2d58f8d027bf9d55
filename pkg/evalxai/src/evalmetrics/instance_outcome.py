import math
from typing import Any, Dict, Optional, Sequence, Tuple

from evalxai.src.explain.rule import PredictedClass


def _check_risk(name: str, risk: Optional[float]) -> Optional[float]:
    if risk is None:
        return None
    risk = float(risk)
    if not math.isfinite(risk) or not 0.0 <= risk <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {risk}")
    return risk


class InstanceOutcome:
    """model risks of one test instance and of its green and red simulated variants"""

    def __init__(
        self,
        instance_id: str,
        true_label: int,
        original_risk: float,
        green_risk: Optional[float],
        red_risk: Optional[float],
        explanation_failed: bool = False,
        clamped: Sequence[str] = (),
    ):
        if true_label not in (0, 1):
            raise ValueError(f"true label must be 0 or 1, got {true_label}")
        if explanation_failed and (green_risk is not None or red_risk is not None):
            raise ValueError(f"failed outcome {instance_id} cannot carry variant risks")
        if not explanation_failed and (green_risk is None or red_risk is None):
            raise ValueError(f"outcome {instance_id} needs both variant risks")
        self._instance_id = str(instance_id)
        self._true_label = int(true_label)
        self._original_risk = _check_risk("original risk", original_risk)
        self._green_risk = _check_risk("green risk", green_risk)
        self._red_risk = _check_risk("red risk", red_risk)
        self._explanation_failed = bool(explanation_failed)
        self._clamped = tuple(clamped)

    @property
    def instance_id(self) -> str:
        return self._instance_id

    @property
    def true_label(self) -> int:
        return self._true_label

    @property
    def predicted_class(self) -> PredictedClass:
        return PredictedClass.from_risk(self._original_risk)  # type: ignore

    @property
    def original_risk(self) -> float:
        return self._original_risk  # type: ignore

    @property
    def green_risk(self) -> Optional[float]:
        return self._green_risk

    @property
    def red_risk(self) -> Optional[float]:
        return self._red_risk

    @property
    def green_class(self) -> Optional[PredictedClass]:
        return None if self._green_risk is None else PredictedClass.from_risk(self._green_risk)

    @property
    def red_class(self) -> Optional[PredictedClass]:
        return None if self._red_risk is None else PredictedClass.from_risk(self._red_risk)

    @property
    def explanation_failed(self) -> bool:
        return self._explanation_failed

    @property
    def clamped(self) -> Tuple[str, ...]:
        return self._clamped

    @property
    def correct(self) -> bool:
        return self.predicted_class.label == self._true_label

    @property
    def flip_risk(self) -> Optional[float]:
        """risk of the variant meant to change the prediction, green for positive and red for negative"""
        return self._green_risk if self.predicted_class is PredictedClass.POSITIVE else self._red_risk

    @property
    def flipped(self) -> bool:
        flip_risk = self.flip_risk
        return flip_risk is not None and PredictedClass.from_risk(flip_risk) is not self.predicted_class

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance_id": self._instance_id,
            "true_label": self._true_label,
            "predicted_class": self.predicted_class.value,
            "original_risk": self._original_risk,
            "green_risk": self._green_risk,
            "red_risk": self._red_risk,
            "explanation_failed": self._explanation_failed,
            "clamped": ";".join(self._clamped),
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InstanceOutcome) and self.to_dict() == other.to_dict()

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.__str__())

    def __str__(self) -> str:
        return f"{InstanceOutcome.__name__}: {self.to_dict()}"

    def __repr__(self) -> str:
        return self.__str__()
