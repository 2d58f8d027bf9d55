from abc import ABC, abstractmethod
from typing import BinaryIO

from evalxai.src.data.dataset import Dataset


class IDatasetLoader(ABC):
    @abstractmethod
    def load(self, source: BinaryIO) -> Dataset:
        """

        :return: the dataset parsed from the byte stream
                 <Dataset>
        """
