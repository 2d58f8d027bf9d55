from abc import ABC, abstractmethod
from typing import Any, Dict, List

import numpy


class IProbabilityModel(ABC):
    @property
    @abstractmethod
    def kind(self) -> str:
        """

        :return: the model family, one of logistic_regression, decision_tree or random_forest
                 <str>
        """

    @property
    @abstractmethod
    def feature_names(self) -> List[str]:
        """

        :return: the feature order the model expects its rows in
                 <List[str]>
        """

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        """

        :return: the hyperparameters and seed the model was trained with
                 <Dict[str, Any]>
        """

    @abstractmethod
    def risks(self, rows: numpy.ndarray) -> numpy.ndarray:
        """

        :return: probability of the positive class for every row, each in [0, 1]
                 <numpy.ndarray>
        """

    @abstractmethod
    def risk(self, instance: numpy.ndarray) -> float:
        """

        :return: probability of the positive class for one instance
                 <float>
        """

    @abstractmethod
    def classify(self, instance: numpy.ndarray) -> int:
        """

        :return: 1 when risk(instance) >= 0.5 else 0
                 <int>
        """
