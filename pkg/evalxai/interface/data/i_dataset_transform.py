from abc import ABC, abstractmethod

from evalxai.src.data.dataset import Dataset


class IDatasetTransform(ABC):
    @abstractmethod
    def apply(self, dataset: Dataset) -> Dataset:
        """

        :return: a new dataset, the input is never modified
                 <Dataset>
        """
