from abc import ABC, abstractmethod
from typing import Sequence

from evalxai.src.evalmetrics.cliffs_delta import EffectSize


class IEffectSize(ABC):
    @abstractmethod
    def measure(self, first: Sequence[float], second: Sequence[float]) -> EffectSize:
        """

        :return: the effect size of first against second and its magnitude label
                 <EffectSize>
        """
