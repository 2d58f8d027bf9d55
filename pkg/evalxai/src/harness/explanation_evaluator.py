import logging
from typing import Dict, List, Optional, Sequence

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_stats import FeatureStats
from evalxai.src.errors import DatasetError
from evalxai.src.evalmetrics.consistency_checker import ConsistencyChecker, align_runs
from evalxai.src.evalmetrics.explanation_stability import explanation_stability
from evalxai.src.evalmetrics.metric_report import MetricReporter
from evalxai.src.evalmetrics.outcome_builder import OutcomeBuilder, SimulatedInstance
from evalxai.src.evalmetrics.reliability_metrics import PartitionBy, prob_diff
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.explanation_exchange import ExplanationExchange
from evalxai.src.harness.run_artifacts import CellKey, ModelArtifacts
from evalxai.src.models.hyperparameter_search import SearchResult
from evalxai.src.models.model_score import ModelScore
from evalxai.src.simulate.instance_simulator import SimulationConfig

logger = logging.getLogger(__name__)


def split_runs(explanations: Sequence[Explanation]) -> List[Dict[str, Explanation]]:
    """the k-th explanation of an instance goes to the k-th run"""
    runs: List[Dict[str, Explanation]] = []
    for explanation in explanations:
        for run in runs:
            if explanation.instance_id not in run:
                run[explanation.instance_id] = explanation
                break
        else:
            runs.append({explanation.instance_id: explanation})
    return runs


def import_runs(
    paths: Sequence[str], schema: Dataset, exchange: Optional[ExplanationExchange] = None
) -> List[Dict[str, Explanation]]:
    if exchange is None:
        exchange = ExplanationExchange()
    runs: List[Dict[str, Explanation]] = []
    for path in paths:
        try:
            document_runs = split_runs(exchange.load(path, schema))
        except (OSError, ValueError) as error:
            raise DatasetError(f"can not import explanations from {path}: {error}") from error
        logger.info("imported %d run(s) from %s", len(document_runs), path)
        runs.extend(document_runs)
    return runs


class ExplanationEvaluator:
    """
    turns the explanations of every run into outcomes, metric reports, a consistency report across runs
    and explanation stability
    """

    def __init__(
        self,
        partition_by: PartitionBy = PartitionBy.PREDICTED,
        significance: float = 0.05,
        outcome_builder: Optional[OutcomeBuilder] = None,
    ):
        if outcome_builder is None:
            outcome_builder = OutcomeBuilder()
        self._outcome_builder = outcome_builder
        self._reporter = MetricReporter(partition_by)
        self._checker = ConsistencyChecker(significance=significance)

    def evaluate(
        self,
        name: str,
        model: IProbabilityModel,
        score: ModelScore,
        instances: Dataset,
        explanation_runs: List[Dict[str, Explanation]],
        stats: FeatureStats,
        alphas: Sequence[float],
        clamp_non_negative: bool = False,
        search: Optional[SearchResult] = None,
        cv_score: Optional[ModelScore] = None,
    ) -> ModelArtifacts:
        simulated: Dict[CellKey, List[SimulatedInstance]] = {}
        reports = []
        for alpha in alphas:
            config = SimulationConfig(alpha, clamp_non_negative)
            for run, explanations in enumerate(explanation_runs, start=1):
                cell = self._outcome_builder.build_detailed(model, instances, explanations, stats, config)
                simulated[(alpha, run)] = cell
                reports.append(self._reporter.report([entry.outcome for entry in cell], name, alpha, run))

        consistency = None
        if len(explanation_runs) >= 2:
            series = [
                {
                    alpha: prob_diff([entry.outcome for entry in simulated[(alpha, run)]]).as_series()
                    for alpha in alphas
                }
                for run in range(1, len(explanation_runs) + 1)
            ]
            consistency = self._checker.check(align_runs(series), name)

        artifacts = ModelArtifacts(
            name,
            model,
            score,
            explanation_runs,
            simulated,
            reports,
            consistency,
            explanation_stability(explanation_runs),
            search,
            cv_score,
        )
        if artifacts.all_explanations_failed:
            logger.error("every explanation of %s failed, its reports hold no metric values", name)
        elif artifacts.failure_count:
            logger.info("%s: %d failed explanation outcomes excluded from the metrics", name, artifacts.failure_count)
        return artifacts
