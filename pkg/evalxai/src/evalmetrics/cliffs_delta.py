from typing import Sequence

import numpy

# upper bounds on |delta| for each label, anything at or above the last bound is large
MAGNITUDE_THRESHOLDS = ((0.147, "negligible"), (0.33, "small"), (0.474, "medium"))


def magnitude(delta: float) -> str:
    for bound, label in MAGNITUDE_THRESHOLDS:
        if abs(delta) < bound:
            return label
    return "large"


class EffectSize:
    def __init__(self, delta: float):
        if not -1.0 <= delta <= 1.0:
            raise ValueError(f"delta must lie in [-1, 1], got {delta}")
        self._delta = float(delta)

    @property
    def delta(self) -> float:
        return self._delta

    @property
    def magnitude(self) -> str:
        return magnitude(self._delta)

    def __eq__(self, other: object) -> bool:
        return str(self) == str(other)

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.__str__())

    def __str__(self) -> str:
        return f"{EffectSize.__name__}: delta={self._delta!r} ({self.magnitude})"

    def __repr__(self) -> str:
        return self.__str__()


class CliffsDelta:
    """(#{a_i > b_j} - #{a_i < b_j}) / (|a| |b|) over all pairs"""

    def measure(self, first: Sequence[float], second: Sequence[float]) -> EffectSize:
        first_values = numpy.asarray(first, dtype=float)
        second_values = numpy.asarray(second, dtype=float)
        if first_values.shape[0] == 0 or second_values.shape[0] == 0:
            raise ValueError("cliff's delta needs two nonempty samples")
        signs = numpy.sign(first_values[:, None] - second_values[None, :])
        return EffectSize(float(signs.sum()) / (first_values.shape[0] * second_values.shape[0]))


def cliffs_delta(first: Sequence[float], second: Sequence[float]) -> EffectSize:
    return CliffsDelta().measure(first, second)
