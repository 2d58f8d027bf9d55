import enum
import math

import numpy


class Orientation(enum.Enum):
    LESS_THAN = "lt"
    MORE_THAN = "gt"

    @staticmethod
    def from_token(token: str) -> "Orientation":
        for orientation in Orientation:
            if orientation.value == token:
                return orientation
        raise ValueError(f"unknown orientation token {token!r}, expected lt or gt")

    def opposite(self) -> "Orientation":
        return Orientation.MORE_THAN if self is Orientation.LESS_THAN else Orientation.LESS_THAN


class PredictedClass(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @staticmethod
    def from_token(token: str) -> "PredictedClass":
        for predicted_class in PredictedClass:
            if predicted_class.value == token:
                return predicted_class
        raise ValueError(f"unknown predicted class {token!r}, expected positive or negative")

    @staticmethod
    def from_risk(risk: float) -> "PredictedClass":
        return PredictedClass.POSITIVE if risk >= 0.5 else PredictedClass.NEGATIVE

    @staticmethod
    def from_label(label: int) -> "PredictedClass":
        return PredictedClass.POSITIVE if label == 1 else PredictedClass.NEGATIVE

    @property
    def label(self) -> int:
        return 1 if self is PredictedClass.POSITIVE else 0


class Rule:
    """one sided rule "feature < threshold" or "feature > threshold" in feature units"""

    def __init__(self, feature: str, orientation: Orientation, threshold: float):
        if not isinstance(feature, str) or not feature:
            raise ValueError(f"rule feature must be a nonempty string, got {feature!r}")
        if not isinstance(orientation, Orientation):
            raise TypeError(f"orientation must be an Orientation, got {type(orientation).__name__}")
        threshold = float(threshold)
        if not math.isfinite(threshold):
            raise ValueError(f"rule threshold for {feature} must be finite, got {threshold}")
        self._feature = feature
        self._orientation = orientation
        self._threshold = threshold

    @property
    def feature(self) -> str:
        return self._feature

    @property
    def orientation(self) -> Orientation:
        return self._orientation

    @property
    def threshold(self) -> float:
        return self._threshold

    def is_satisfied_by(self, value: float) -> bool:
        if self._orientation is Orientation.LESS_THAN:
            return bool(value < self._threshold)
        return bool(value > self._threshold)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rule):
            return False
        return (
            self._feature == other.feature
            and self._orientation is other.orientation
            and numpy.float64(self._threshold).tobytes() == numpy.float64(other.threshold).tobytes()
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self._feature, self._orientation, self._threshold))

    def __str__(self) -> str:
        symbol = "<" if self._orientation is Orientation.LESS_THAN else ">"
        return f"{self._feature} {symbol} {self._threshold!r}"

    def __repr__(self) -> str:
        return f"{Rule.__name__}: {self.__str__()}"
