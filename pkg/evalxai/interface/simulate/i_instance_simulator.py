from abc import ABC, abstractmethod

import numpy

from evalxai.src.explain.explanation import Explanation
from evalxai.src.simulate.direction import Direction
from evalxai.src.simulate.simulation_result import SimulationResult


class IInstanceSimulator(ABC):
    @abstractmethod
    def simulate(self, instance: numpy.ndarray, explanation: Explanation, direction: Direction) -> SimulationResult:
        """

        moves every ruled feature alpha standard deviations from its rule threshold, other features are copied
        :return: the simulated row and the features clamped at zero
                 <SimulationResult>
        """
