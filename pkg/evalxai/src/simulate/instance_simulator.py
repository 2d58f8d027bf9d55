import math
from typing import List

import numpy

from evalxai.interface.simulate.i_instance_simulator import IInstanceSimulator
from evalxai.src.data.feature_stats import FeatureStats
from evalxai.src.explain.explanation import Explanation
from evalxai.src.simulate.direction import Direction, direction_sign
from evalxai.src.simulate.simulation_result import SimulationResult


class SimulationConfig:
    def __init__(self, alpha: float, clamp_non_negative: bool = False):
        if not (math.isfinite(alpha) and alpha > 0):
            raise ValueError(f"alpha must be a positive number, got {alpha}")
        self._alpha = float(alpha)
        self._clamp_non_negative = bool(clamp_non_negative)

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def clamp_non_negative(self) -> bool:
        return self._clamp_non_negative

    def __str__(self) -> str:
        return f"{SimulationConfig.__name__}: alpha={self._alpha!r}, clamp_non_negative={self._clamp_non_negative}"

    def __repr__(self) -> str:
        return self.__str__()


class InstanceSimulator(IInstanceSimulator):
    """
    x'[f] = t + sign * alpha * std(f) for every rule (f, t) of the explanation

    values are anchored at the rule threshold, not at the instance's own value. with clamping enabled a
    feature flagged non negative that lands below zero is set to 0 and reported.
    """

    def __init__(self, stats: FeatureStats, config: SimulationConfig):
        self._stats = stats
        self._config = config
        self._columns = {name: index for index, name in enumerate(stats.feature_names)}
        self._non_negative = {feature.name for feature in stats.features if feature.non_negative}

    @property
    def config(self) -> SimulationConfig:
        return self._config

    def simulate(self, instance: numpy.ndarray, explanation: Explanation, direction: Direction) -> SimulationResult:
        if explanation.failed:
            raise ValueError(f"explanation of instance {explanation.instance_id} has no rules to simulate from")
        row = numpy.array(instance, dtype=float)
        if row.shape != (len(self._columns),):
            raise ValueError(f"expected an instance of {len(self._columns)} features, got shape {row.shape}")
        clamped: List[str] = []
        for rule in explanation.rules:
            if not self._stats.has(rule.feature) or rule.feature not in self._columns:
                raise KeyError(f"no statistics for ruled feature {rule.feature}")
            sign = direction_sign(rule.orientation, explanation.predicted_class, direction)
            value = rule.threshold + sign * self._config.alpha * self._stats.get(rule.feature).std
            if self._config.clamp_non_negative and rule.feature in self._non_negative and value < 0:
                value = 0.0
                clamped.append(rule.feature)
            row[self._columns[rule.feature]] = value
        return SimulationResult(row, clamped)


def simulate(
    instance: numpy.ndarray,
    explanation: Explanation,
    stats: FeatureStats,
    direction: Direction,
    config: SimulationConfig,
) -> numpy.ndarray:
    return InstanceSimulator(stats, config).simulate(instance, explanation, direction).row
