import dataclasses
import json
import os
import re
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

from evalxai.src.errors import ExperimentConfigError
from evalxai.src.evalmetrics.reliability_metrics import PartitionBy
from evalxai.src.explain.surrogate_explainer import SurrogateConfig
from evalxai.src.models.hyperparameter_search import STRATEGIES
from evalxai.src.models.model_trainer_factory import ModelTrainerFactory

EXPLAINER_KINDS = ("surrogate", "oracle", "import")
MODEL_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")
JOBS_VARIABLE = "EVALXAI_JOBS"


def _check_keys(document: Any, allowed: Iterable[str], where: str) -> Dict[str, Any]:
    if not isinstance(document, dict):
        raise ExperimentConfigError(f"{where} must be a json object")
    unknown = sorted(set(document) - set(allowed))
    if unknown:
        raise ExperimentConfigError(f"unknown keys {unknown} in {where}")
    return document


def _integer(value: Any, key: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ExperimentConfigError(f"{key} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ExperimentConfigError(f"{key} must be at least {minimum}, got {value}")
    return value


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ExperimentConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _boolean(value: Any, key: str) -> bool:
    if not isinstance(value, bool):
        raise ExperimentConfigError(f"{key} must be true or false, got {value!r}")
    return value


def _string(value: Any, key: str) -> str:
    if not isinstance(value, str) or not value:
        raise ExperimentConfigError(f"{key} must be a non empty string, got {value!r}")
    return value


def _object(value: Any, key: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ExperimentConfigError(f"{key} must be a json object, got {value!r}")
    return dict(value)


def _resolve(path: str, base_directory: Optional[str]) -> str:
    if base_directory is None or os.path.isabs(path):
        return path
    return os.path.join(base_directory, path)


@dataclasses.dataclass(frozen=True)
class SyntheticSpec:
    n_rows: int
    coefficients: Tuple[float, ...]
    intercept: float = 0.0
    label_noise: float = 0.0
    seed: int = 0

    @staticmethod
    def from_dict(document: Any) -> "SyntheticSpec":
        document = _check_keys(document, ("n_rows", "coefficients", "intercept", "label_noise", "seed"), "synthetic")
        if "n_rows" not in document or "coefficients" not in document:
            raise ExperimentConfigError("synthetic needs n_rows and coefficients")
        coefficients = document["coefficients"]
        if not isinstance(coefficients, list) or not coefficients:
            raise ExperimentConfigError("synthetic.coefficients must be a non empty list")
        label_noise = _number(document.get("label_noise", 0.0), "synthetic.label_noise")
        if not 0.0 <= label_noise < 0.5:
            raise ExperimentConfigError(f"synthetic.label_noise must lie in [0, 0.5), got {label_noise}")
        return SyntheticSpec(
            _integer(document["n_rows"], "synthetic.n_rows", minimum=2),
            tuple(_number(value, "synthetic.coefficients") for value in coefficients),
            _number(document.get("intercept", 0.0), "synthetic.intercept"),
            label_noise,
            _integer(document.get("seed", 0), "synthetic.seed"),
        )


@dataclasses.dataclass(frozen=True)
class DatasetSpec:
    csv: Optional[str] = None
    label_column: str = "label"
    positive_label: str = "1"
    non_negative: Tuple[str, ...] = ()
    infer_non_negative: bool = False
    synthetic: Optional[SyntheticSpec] = None

    @staticmethod
    def from_dict(document: Any, base_directory: Optional[str] = None) -> "DatasetSpec":
        document = _check_keys(
            document,
            ("csv", "label_column", "positive_label", "non_negative", "infer_non_negative", "synthetic"),
            "dataset",
        )
        if ("csv" in document) == ("synthetic" in document):
            raise ExperimentConfigError("dataset needs exactly one of csv and synthetic")
        non_negative = document.get("non_negative", [])
        if not isinstance(non_negative, list):
            raise ExperimentConfigError("dataset.non_negative must be a list of feature names")
        return DatasetSpec(
            csv=_resolve(_string(document["csv"], "dataset.csv"), base_directory) if "csv" in document else None,
            label_column=_string(document.get("label_column", "label"), "dataset.label_column"),
            positive_label=str(document.get("positive_label", "1")),
            non_negative=tuple(_string(name, "dataset.non_negative") for name in non_negative),
            infer_non_negative=_boolean(document.get("infer_non_negative", False), "dataset.infer_non_negative"),
            synthetic=SyntheticSpec.from_dict(document["synthetic"]) if "synthetic" in document else None,
        )


@dataclasses.dataclass(frozen=True)
class PreprocessingSpec:
    spearman_filter: bool = False
    spearman_threshold: float = 0.7
    vif_threshold: Optional[float] = None
    test_fraction: float = 0.1
    smote: bool = False
    smote_k: int = 5
    balance_test: bool = False

    @staticmethod
    def from_dict(document: Any) -> "PreprocessingSpec":
        allowed = [field.name for field in dataclasses.fields(PreprocessingSpec)]
        document = _check_keys(document, allowed, "preprocessing")
        test_fraction = _number(document.get("test_fraction", 0.1), "preprocessing.test_fraction")
        if not 0.0 < test_fraction < 1.0:
            raise ExperimentConfigError(f"preprocessing.test_fraction must lie in (0, 1), got {test_fraction}")
        threshold = _number(document.get("spearman_threshold", 0.7), "preprocessing.spearman_threshold")
        if not 0.0 < threshold <= 1.0:
            raise ExperimentConfigError(f"preprocessing.spearman_threshold must lie in (0, 1], got {threshold}")
        vif_threshold = document.get("vif_threshold")
        return PreprocessingSpec(
            spearman_filter=_boolean(document.get("spearman_filter", False), "preprocessing.spearman_filter"),
            spearman_threshold=threshold,
            vif_threshold=None if vif_threshold is None else _number(vif_threshold, "preprocessing.vif_threshold"),
            test_fraction=test_fraction,
            smote=_boolean(document.get("smote", False), "preprocessing.smote"),
            smote_k=_integer(document.get("smote_k", 5), "preprocessing.smote_k", minimum=1),
            balance_test=_boolean(document.get("balance_test", False), "preprocessing.balance_test"),
        )


@dataclasses.dataclass(frozen=True)
class SearchSpec:
    space: Dict[str, Any]
    strategy: str = "grid"
    budget: int = 10
    folds: int = 10

    @staticmethod
    def from_dict(document: Any, key: str) -> "SearchSpec":
        document = _check_keys(document, ("space", "strategy", "budget", "folds"), key)
        if "space" not in document:
            raise ExperimentConfigError(f"{key} needs a space")
        space = _object(document["space"], f"{key}.space")
        if not space:
            raise ExperimentConfigError(f"{key}.space must name at least one parameter")
        strategy = document.get("strategy", "grid")
        if strategy not in STRATEGIES:
            raise ExperimentConfigError(f"{key}.strategy must be one of {list(STRATEGIES)}, got {strategy!r}")
        return SearchSpec(
            space,
            strategy,
            _integer(document.get("budget", 10), f"{key}.budget", minimum=1),
            _integer(document.get("folds", 10), f"{key}.folds", minimum=2),
        )


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    name: str
    kind: str
    params: Dict[str, Any] = dataclasses.field(default_factory=dict)
    search: Optional[SearchSpec] = None
    cv_folds: Optional[int] = None

    @staticmethod
    def from_dict(document: Any, index: int) -> "ModelSpec":
        key = f"models[{index}]"
        document = _check_keys(document, ("name", "kind", "params", "search", "cv_folds"), key)
        name = _string(document.get("name"), f"{key}.name")
        if not MODEL_NAME.match(name):
            raise ExperimentConfigError(f"{key}.name may only hold letters, digits, '.', '_' and '-', got {name!r}")
        kind = document.get("kind")
        if kind not in ModelTrainerFactory.kinds():
            raise ExperimentConfigError(f"{key}.kind must be one of {ModelTrainerFactory.kinds()}, got {kind!r}")
        params = _object(document.get("params", {}), f"{key}.params")
        try:
            ModelTrainerFactory.create(kind, params)
        except (KeyError, ValueError, TypeError) as error:
            raise ExperimentConfigError(f"{key}.params: {error}") from error
        search = None
        if document.get("search") is not None:
            search = SearchSpec.from_dict(document["search"], f"{key}.search")
            unknown = sorted(set(search.space) - set(ModelTrainerFactory.TRAINERS[kind].PARAMETERS))
            if unknown:
                raise ExperimentConfigError(f"{key}.search.space has unknown parameters {unknown} for {kind}")
        cv_folds = document.get("cv_folds")
        return ModelSpec(
            name,
            kind,
            params,
            search,
            None if cv_folds is None else _integer(cv_folds, f"{key}.cv_folds", minimum=2),
        )


@dataclasses.dataclass(frozen=True)
class ExplainerSpec:
    kind: str = "surrogate"
    config: Dict[str, Any] = dataclasses.field(default_factory=dict)
    top_k: int = 3
    files: Dict[str, Tuple[str, ...]] = dataclasses.field(default_factory=dict)

    @staticmethod
    def from_dict(document: Any, base_directory: Optional[str] = None) -> "ExplainerSpec":
        document = _check_keys(document, ("kind", "config", "top_k", "files"), "explainer")
        kind = document.get("kind", "surrogate")
        if kind not in EXPLAINER_KINDS:
            raise ExperimentConfigError(f"explainer.kind must be one of {list(EXPLAINER_KINDS)}, got {kind!r}")
        top_k = _integer(document.get("top_k", 3), "explainer.top_k", minimum=1)
        config = _object(document.get("config", {}), "explainer.config")
        if kind == "surrogate":
            try:
                SurrogateConfig.from_dict({"top_k": top_k, **config})
            except (ValueError, TypeError) as error:
                raise ExperimentConfigError(f"explainer.config: {error}") from error
        files: Dict[str, Tuple[str, ...]] = {}
        for model_name, paths in _object(document.get("files", {}), "explainer.files").items():
            paths = [paths] if isinstance(paths, str) else paths
            if not isinstance(paths, list) or not paths:
                raise ExperimentConfigError(f"explainer.files.{model_name} must be a path or a list of paths")
            files[model_name] = tuple(
                _resolve(_string(path, f"explainer.files.{model_name}"), base_directory) for path in paths
            )
        return ExplainerSpec(kind, config, top_k, files)

    def surrogate_config(self) -> SurrogateConfig:
        return SurrogateConfig.from_dict({"top_k": self.top_k, **self.config})


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """one experiment grid: a dataset, its preprocessing, the models to explain and how to explain them"""

    dataset: DatasetSpec
    models: Tuple[ModelSpec, ...]
    preprocessing: PreprocessingSpec = PreprocessingSpec()
    explainer: ExplainerSpec = ExplainerSpec()
    alphas: Tuple[float, ...] = (1.0, 2.0, 3.0)
    runs: int = 3
    instance_cap: Optional[int] = None
    master_seed: int = 0
    significance: float = 0.05
    clamp_non_negative: bool = False
    partition_by: PartitionBy = PartitionBy.PREDICTED
    jobs: int = 1
    render_plots: bool = False

    @staticmethod
    def from_dict(document: Any, base_directory: Optional[str] = None) -> "ExperimentConfig":
        document = _check_keys(
            document,
            (
                "dataset",
                "preprocessing",
                "models",
                "explainer",
                "alphas",
                "runs",
                "instance_cap",
                "master_seed",
                "significance",
                "clamp_non_negative",
                "partition_by",
                "jobs",
                "render_plots",
            ),
            "config",
        )
        if "dataset" not in document or "models" not in document:
            raise ExperimentConfigError("config needs a dataset and models")
        models_document = document["models"]
        if not isinstance(models_document, list) or not models_document:
            raise ExperimentConfigError("models must be a non empty list")
        models = tuple(ModelSpec.from_dict(entry, index) for index, entry in enumerate(models_document))
        names = [model.name for model in models]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ExperimentConfigError(f"duplicate model names {duplicates}")

        explainer = ExplainerSpec.from_dict(document.get("explainer", {}), base_directory)
        if explainer.kind == "oracle":
            others = [model.name for model in models if model.kind != "logistic_regression"]
            if others:
                raise ExperimentConfigError(f"the oracle explainer only explains logistic regression, not {others}")
        if explainer.kind == "import":
            missing = sorted(set(names) - set(explainer.files))
            if missing:
                raise ExperimentConfigError(f"explainer.files has no explanation documents for {missing}")

        alphas = document.get("alphas", [1, 2, 3])
        if not isinstance(alphas, list) or not alphas:
            raise ExperimentConfigError("alphas must be a non empty list")
        alphas = [_number(alpha, "alphas") for alpha in alphas]
        if any(alpha <= 0 for alpha in alphas) or len(set(alphas)) != len(alphas):
            raise ExperimentConfigError(f"alphas must be distinct and positive, got {alphas}")
        instance_cap = document.get("instance_cap")
        significance = _number(document.get("significance", 0.05), "significance")
        if not 0.0 < significance < 1.0:
            raise ExperimentConfigError(f"significance must lie in (0, 1), got {significance}")
        try:
            partition_by = PartitionBy.from_token(document.get("partition_by", "predicted"))
        except ValueError as error:
            raise ExperimentConfigError(str(error)) from error

        return ExperimentConfig(
            dataset=DatasetSpec.from_dict(document["dataset"], base_directory),
            models=models,
            preprocessing=PreprocessingSpec.from_dict(document.get("preprocessing", {})),
            explainer=explainer,
            alphas=tuple(alphas),
            runs=_integer(document.get("runs", 3), "runs", minimum=1),
            instance_cap=None if instance_cap is None else _integer(instance_cap, "instance_cap", minimum=1),
            master_seed=_integer(document.get("master_seed", 0), "master_seed"),
            significance=significance,
            clamp_non_negative=_boolean(document.get("clamp_non_negative", False), "clamp_non_negative"),
            partition_by=partition_by,
            jobs=_integer(document.get("jobs", 1), "jobs", minimum=1),
            render_plots=_boolean(document.get("render_plots", False), "render_plots"),
        )


def load_config(path: str) -> ExperimentConfig:
    """relative dataset and explanation paths resolve against the directory of the config file"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as error:
        raise ExperimentConfigError(f"can not read config {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise ExperimentConfigError(f"config {path} is not valid json: {error}") from error
    return ExperimentConfig.from_dict(document, os.path.dirname(os.path.abspath(path)))


def resolve_jobs(cli_jobs: Optional[int], config_jobs: int, environment: Optional[Mapping[str, str]] = None) -> int:
    """EVALXAI_JOBS beats --jobs, which beats the config"""
    if environment is None:
        environment = os.environ
    value = environment.get(JOBS_VARIABLE)
    if value:
        try:
            jobs = int(value)
        except ValueError as error:
            raise ExperimentConfigError(f"{JOBS_VARIABLE} must be an integer, got {value!r}") from error
        return _integer(jobs, JOBS_VARIABLE, minimum=1)
    if cli_jobs is not None:
        return _integer(cli_jobs, "--jobs", minimum=1)
    return config_jobs
