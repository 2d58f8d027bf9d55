from abc import ABC, abstractmethod
from typing import Any, Dict

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset


class IModelTrainer(ABC):
    @property
    @abstractmethod
    def kind(self) -> str:
        """

        :return: the model family this trainer produces
                 <str>
        """

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        """

        :return: the full hyperparameter set, defaults included
                 <Dict[str, Any]>
        """

    @abstractmethod
    def train(self, dataset: Dataset, seed: int) -> IProbabilityModel:
        """

        :return: a trained immutable model, deterministic given dataset and seed
                 <IProbabilityModel>
        """
