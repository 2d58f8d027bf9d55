from abc import ABC, abstractmethod

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.model_score import ModelScore


class IModelScorer(ABC):
    @abstractmethod
    def score(self, model: IProbabilityModel, dataset: Dataset) -> ModelScore:
        """

        :return: accuracy, f1 of the positive class and auc of the model on the dataset
                 <ModelScore>
        """
