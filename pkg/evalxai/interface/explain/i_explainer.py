from abc import ABC, abstractmethod

import numpy

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.explain.explanation import Explanation


class IExplainer(ABC):
    @property
    @abstractmethod
    def explainer_id(self) -> str:
        """

        :return: the name recorded on every explanation this explainer produces
                 <str>
        """

    @abstractmethod
    def explain(self, model: IProbabilityModel, instance: numpy.ndarray, instance_id: str, seed: int) -> Explanation:
        """

        explains the model prediction for one instance, a failure is an explanation with no rules
        :return: the explanation, deterministic given the seed
                 <Explanation>
        """
