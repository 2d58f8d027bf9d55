from typing import Dict, List, Optional, Tuple

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.evalmetrics.consistency_checker import ConsistencyReport
from evalxai.src.evalmetrics.explanation_stability import StabilityReport
from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.evalmetrics.metric_report import MetricReport
from evalxai.src.evalmetrics.outcome_builder import SimulatedInstance
from evalxai.src.explain.explanation import Explanation
from evalxai.src.models.hyperparameter_search import SearchResult
from evalxai.src.models.model_score import ModelScore

AUC_GATE = 0.75

# (alpha, run) with runs numbered from 1
CellKey = Tuple[float, int]


class ModelArtifacts:
    """everything one model produced: its score, the explanations of every run and the resulting reports"""

    def __init__(
        self,
        name: str,
        model: IProbabilityModel,
        score: ModelScore,
        explanations: List[Dict[str, Explanation]],
        simulated: Dict[CellKey, List[SimulatedInstance]],
        reports: List[MetricReport],
        consistency: Optional[ConsistencyReport],
        stability: StabilityReport,
        search: Optional[SearchResult] = None,
        cv_score: Optional[ModelScore] = None,
    ):
        self._name = name
        self._model = model
        self._score = score
        self._explanations = explanations
        self._simulated = simulated
        self._reports = reports
        self._consistency = consistency
        self._stability = stability
        self._search = search
        self._cv_score = cv_score

    @property
    def name(self) -> str:
        return self._name

    @property
    def model(self) -> IProbabilityModel:
        return self._model

    @property
    def score(self) -> ModelScore:
        return self._score

    @property
    def below_auc_gate(self) -> bool:
        return self._score.auc is None or self._score.auc < AUC_GATE

    @property
    def explanations(self) -> List[Dict[str, Explanation]]:
        return self._explanations

    @property
    def runs(self) -> int:
        return len(self._explanations)

    @property
    def simulated(self) -> Dict[CellKey, List[SimulatedInstance]]:
        return self._simulated

    def outcomes(self, alpha: float, run: int) -> List[InstanceOutcome]:
        return [entry.outcome for entry in self._simulated[(alpha, run)]]

    @property
    def reports(self) -> List[MetricReport]:
        return self._reports

    @property
    def consistency(self) -> Optional[ConsistencyReport]:
        return self._consistency

    @property
    def stability(self) -> StabilityReport:
        return self._stability

    @property
    def search(self) -> Optional[SearchResult]:
        return self._search

    @property
    def cv_score(self) -> Optional[ModelScore]:
        return self._cv_score

    @property
    def failure_count(self) -> int:
        return sum(report.failure_count for report in self._reports)

    @property
    def clamp_count(self) -> int:
        return sum(report.clamp_count for report in self._reports)

    @property
    def all_explanations_failed(self) -> bool:
        return all(explanation.failed for run in self._explanations for explanation in run.values())


class RunArtifacts:
    def __init__(
        self,
        alphas: Tuple[float, ...],
        train: Dataset,
        instances: Dataset,
        models: List[ModelArtifacts],
        render_plots: bool = False,
    ):
        self._alphas = alphas
        self._train = train
        self._instances = instances
        self._models = models
        self._render_plots = render_plots

    @property
    def alphas(self) -> Tuple[float, ...]:
        return self._alphas

    @property
    def train(self) -> Dataset:
        return self._train

    @property
    def instances(self) -> Dataset:
        return self._instances

    @property
    def feature_names(self) -> List[str]:
        return self._instances.feature_names

    @property
    def models(self) -> List[ModelArtifacts]:
        return self._models

    @property
    def render_plots(self) -> bool:
        return self._render_plots

    @property
    def reports(self) -> List[MetricReport]:
        return [report for model in self._models for report in model.reports]

    @property
    def consistency_reports(self) -> List[ConsistencyReport]:
        return [model.consistency for model in self._models if model.consistency is not None]
