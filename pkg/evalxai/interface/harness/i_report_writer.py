from abc import ABC, abstractmethod
from typing import List

from evalxai.src.harness.run_artifacts import RunArtifacts


class IReportWriter(ABC):
    @abstractmethod
    def write(self, artifacts: RunArtifacts, directory: str) -> List[str]:
        """

        :return: the paths written, relative to directory
                 <List[str]>
        """
