from abc import ABC, abstractmethod

from evalxai.src.harness.experiment_config import ExperimentConfig
from evalxai.src.harness.run_artifacts import RunArtifacts


class IExperimentRunner(ABC):
    @abstractmethod
    def run(self, config: ExperimentConfig) -> RunArtifacts:
        """

        runs the whole pipeline of one experiment, deterministic given the config
        :return: trained models, scores, explanations, outcomes and reports
                 <RunArtifacts>
        """
