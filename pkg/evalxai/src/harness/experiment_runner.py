import logging
from typing import Dict, List, Optional, Tuple

import numpy
from joblib import Parallel, delayed  # type: ignore

from evalxai.interface.explain.i_explainer import IExplainer
from evalxai.interface.harness.i_experiment_runner import IExperimentRunner
from evalxai.interface.models.i_model_scorer import IModelScorer
from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.csv_dataset_loader import CsvDatasetLoader
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.dataset_splitter import DatasetSplitter
from evalxai.src.data.feature_stats import feature_stats
from evalxai.src.data.smote_oversampler import SmoteOversampler
from evalxai.src.data.spearman_filter import SpearmanFilter
from evalxai.src.data.synthetic_dataset_generator import generate_synthetic
from evalxai.src.data.test_set_balancer import TestSetBalancer
from evalxai.src.errors import DatasetError
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.linear_oracle_explainer import LinearOracleExplainer
from evalxai.src.explain.rule import PredictedClass
from evalxai.src.explain.surrogate_explainer import SurrogateExplainer
from evalxai.src.harness.experiment_config import DatasetSpec, ExperimentConfig, ModelSpec
from evalxai.src.harness.explanation_evaluator import ExplanationEvaluator, import_runs
from evalxai.src.harness.run_artifacts import AUC_GATE, RunArtifacts
from evalxai.src.harness.seed_deriver import derive_seed, stage_seed
from evalxai.src.models.cross_validator import CrossValidator
from evalxai.src.models.hyperparameter_search import HyperparameterSearch, SearchResult
from evalxai.src.models.model_score import ModelScore
from evalxai.src.models.model_scorer import ModelScorer
from evalxai.src.models.model_trainer_factory import ModelTrainerFactory

logger = logging.getLogger(__name__)


def load_dataset(spec: DatasetSpec) -> Dataset:
    if spec.synthetic is not None:
        synthetic = spec.synthetic
        try:
            return generate_synthetic(
                synthetic.n_rows, synthetic.coefficients, synthetic.intercept, synthetic.label_noise, synthetic.seed
            )
        except ValueError as error:
            raise DatasetError(f"can not generate the synthetic dataset: {error}") from error
    loader = CsvDatasetLoader(spec.label_column, spec.positive_label, spec.non_negative, spec.infer_non_negative)
    return loader.load_path(spec.csv)  # type: ignore


def explain_instance(
    explainer: IExplainer, model: IProbabilityModel, instance: numpy.ndarray, instance_id: str, seed: int
) -> Explanation:
    """an explainer that gives up yields an explanation without rules, never an exception"""
    try:
        return explainer.explain(model, instance, instance_id, seed)
    except ValueError as error:
        logger.debug("explaining %s with seed %d failed: %s", instance_id, seed, error)
        risk = model.risk(instance)
        return Explanation(instance_id, PredictedClass.from_risk(risk), risk, [], explainer.explainer_id, seed)


class ExperimentRunner(IExperimentRunner):
    """
    ingest, filter, split, oversample, train, explain, simulate and report

    every seed is derived from the master seed: stages by name and explanations by (instance, run), so the
    artifacts do not depend on the number of jobs explaining instances in parallel.
    """

    def __init__(
        self,
        jobs: Optional[int] = None,
        scorer: Optional[IModelScorer] = None,
        hyperparameter_search: Optional[HyperparameterSearch] = None,
    ):
        if scorer is None:
            scorer = ModelScorer()
        if hyperparameter_search is None:
            hyperparameter_search = HyperparameterSearch(CrossValidator(scorer))
        self._jobs = jobs
        self._scorer = scorer
        self._hyperparameter_search = hyperparameter_search

    def run(self, config: ExperimentConfig) -> RunArtifacts:
        jobs = config.jobs if self._jobs is None else self._jobs
        dataset = load_dataset(config.dataset)
        dataset, train, fit_set, test, instances = self._prepare(config, dataset)
        stats = feature_stats(train)
        explainer = self._explainer(config, train)
        evaluator = ExplanationEvaluator(config.partition_by, config.significance)

        models = []
        for spec in config.models:
            model, score, search, cv_score = self._train(config, spec, fit_set, test)
            if config.explainer.kind == "import":
                explanation_runs = import_runs(config.explainer.files[spec.name], dataset)
            else:
                explanation_runs = self._explain_runs(explainer, model, instances, config, jobs)  # type: ignore
            models.append(
                evaluator.evaluate(
                    spec.name,
                    model,
                    score,
                    instances,
                    explanation_runs,
                    stats,
                    config.alphas,
                    config.clamp_non_negative,
                    search,
                    cv_score,
                )
            )
        return RunArtifacts(config.alphas, train, instances, models, config.render_plots)

    @staticmethod
    def _prepare(config: ExperimentConfig, dataset: Dataset) -> Tuple[Dataset, Dataset, Dataset, Dataset, Dataset]:
        """

        :return: the filtered dataset, its training split, the set models are fitted on, the test split and the
                 explained instances
                 <Tuple[Dataset, Dataset, Dataset, Dataset, Dataset]>
        """
        preprocessing = config.preprocessing
        try:
            if preprocessing.spearman_filter:
                dataset = SpearmanFilter(preprocessing.spearman_threshold, preprocessing.vif_threshold).apply(dataset)
                logger.info("kept features %s", dataset.feature_names)
            splitter = DatasetSplitter(preprocessing.test_fraction)
            train, test = splitter.split(dataset, stage_seed(config.master_seed, "split"))
            if preprocessing.balance_test:
                test = TestSetBalancer(stage_seed(config.master_seed, "balance")).apply(test)
            fit_set = train
            if preprocessing.smote:
                smote_seed = stage_seed(config.master_seed, "smote")
                fit_set = SmoteOversampler(preprocessing.smote_k, smote_seed).apply(train)
        except DatasetError:
            raise
        except ValueError as error:
            raise DatasetError(str(error)) from error
        instances = test
        if config.instance_cap is not None and test.n_rows > config.instance_cap:
            instances = test.subset(list(range(config.instance_cap)))
        if instances.n_rows == 0:
            raise DatasetError("no usable test instances")
        logger.info(
            "split %d rows into %d for training (%d after oversampling) and %d for testing, explaining %d",
            dataset.n_rows,
            train.n_rows,
            fit_set.n_rows,
            test.n_rows,
            instances.n_rows,
        )
        return dataset, train, fit_set, test, instances

    @staticmethod
    def _explainer(config: ExperimentConfig, train: Dataset) -> Optional[IExplainer]:
        if config.explainer.kind == "surrogate":
            return SurrogateExplainer(train, config.explainer.surrogate_config())
        if config.explainer.kind == "oracle":
            return LinearOracleExplainer(config.explainer.top_k)
        return None

    def _train(
        self, config: ExperimentConfig, spec: ModelSpec, fit_set: Dataset, test: Dataset
    ) -> Tuple[IProbabilityModel, ModelScore, Optional[SearchResult], Optional[ModelScore]]:
        params = dict(spec.params)
        search = None
        if spec.search is not None:
            search = self._hyperparameter_search.search(
                spec.kind,
                spec.search.space,
                spec.search.strategy,
                spec.search.budget,
                fit_set,
                stage_seed(config.master_seed, f"search:{spec.name}"),
                spec.search.folds,
                fixed_params=spec.params,
            )
            params = search.best_params
        trainer = ModelTrainerFactory.create(spec.kind, params)
        model = trainer.train(fit_set, stage_seed(config.master_seed, f"train:{spec.name}"))
        score = self._scorer.score(model, test)
        cv_score = None
        if spec.cv_folds is not None:
            cv_score = CrossValidator(self._scorer).cross_validate(
                trainer, fit_set, spec.cv_folds, stage_seed(config.master_seed, f"cv:{spec.name}")
            )
        logger.info("%s (%s) on the test split: %s", spec.name, spec.kind, score)
        if score.auc is None or score.auc < AUC_GATE:
            logger.warning("%s has test auc %s, below the %s gate; reporting it anyway", spec.name, score.auc, AUC_GATE)
        return model, score, search, cv_score

    @staticmethod
    def _explain_runs(
        explainer: IExplainer, model: IProbabilityModel, instances: Dataset, config: ExperimentConfig, jobs: int
    ) -> List[Dict[str, Explanation]]:
        tasks = [(run, index) for run in range(1, config.runs + 1) for index in range(instances.n_rows)]
        explanations = Parallel(n_jobs=jobs, prefer="threads")(
            delayed(explain_instance)(
                explainer,
                model,
                instances.rows[index],
                str(instances.row_ids[index]),
                derive_seed(config.master_seed, index, run),
            )
            for run, index in tasks
        )
        runs: List[Dict[str, Explanation]] = [{} for _ in range(config.runs)]
        for (run, _), explanation in zip(tasks, explanations):
            runs[run - 1][explanation.instance_id] = explanation
        return runs


def run_experiment(config: ExperimentConfig, jobs: Optional[int] = None) -> RunArtifacts:
    return ExperimentRunner(jobs).run(config)
