import itertools
import logging
import math
from typing import Any, Dict, List, Optional, Sequence

import numpy

from evalxai.src.data.dataset import Dataset
from evalxai.src.models.cross_validator import CrossValidator
from evalxai.src.models.model_score import ModelScore
from evalxai.src.models.model_trainer_factory import ModelTrainerFactory

logger = logging.getLogger(__name__)

STRATEGIES = ("grid", "random")


class Trial:
    def __init__(self, params: Dict[str, Any], score: Optional[ModelScore] = None, error: Optional[str] = None):
        if (score is None) == (error is None):
            raise ValueError("a trial has either a score or an error")
        self._params = dict(params)
        self._score = score
        self._error = error

    @property
    def params(self) -> Dict[str, Any]:
        return dict(self._params)

    @property
    def score(self) -> Optional[ModelScore]:
        return self._score

    @property
    def error(self) -> Optional[str]:
        return self._error

    @property
    def failed(self) -> bool:
        return self._error is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": self.params,
            "score": None if self._score is None else self._score.to_dict(),
            "error": self._error,
        }


class SearchResult:
    def __init__(
        self, kind: str, strategy: str, best_params: Dict[str, Any], best_score: ModelScore, trials: List[Trial]
    ):
        self._kind = kind
        self._strategy = strategy
        self._best_params = dict(best_params)
        self._best_score = best_score
        self._trials = list(trials)

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def strategy(self) -> str:
        return self._strategy

    @property
    def best_params(self) -> Dict[str, Any]:
        return dict(self._best_params)

    @property
    def best_score(self) -> ModelScore:
        return self._best_score

    @property
    def trials(self) -> List[Trial]:
        return list(self._trials)

    def describe(self) -> str:
        """

        one line summary, e.g. "Grid search AUC 0.6979, l2: 2.78, epochs: 130"
        :return: the summary
                 <str>
        """
        auc = "n/a" if self._best_score.auc is None else f"{self._best_score.auc:.4f}"
        parts = [f"{self._strategy.capitalize()} search AUC {auc}"]
        for name, value in self._best_params.items():
            rendered = f"{value:g}" if isinstance(value, (int, float)) and not isinstance(value, bool) else str(value)
            parts.append(f"{name.replace('_', ' ')}: {rendered}")
        return ", ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self._kind,
            "strategy": self._strategy,
            "best_params": self.best_params,
            "best_score": self._best_score.to_dict(),
            "trials": [trial.to_dict() for trial in self._trials],
        }


def _sample_value(domain: Any, rng: numpy.random.Generator) -> Any:
    if isinstance(domain, dict):
        low, high = float(domain["low"]), float(domain["high"])
        if low > high:
            raise ValueError(f"range low {low} exceeds high {high}")
        if domain.get("integer", False):
            return int(rng.integers(int(low), int(high) + 1))
        if domain.get("log", False):
            if low <= 0:
                raise ValueError(f"log ranges need a positive low bound, got {low}")
            return float(math.exp(rng.uniform(math.log(low), math.log(high))))
        return float(rng.uniform(low, high))
    return domain[int(rng.integers(0, len(domain)))]


def enumerate_candidates(
    space: Dict[str, Any], strategy: str, budget: int, rng: numpy.random.Generator
) -> List[Dict[str, Any]]:
    """

    grid walks the full cross product in the order the space lists names and values, random draws
    budget points with every name sampled independently
    :return: the parameter sets to try
             <List[Dict[str, Any]]>
    """
    if not space:
        raise ValueError("the search space is empty")
    for name, domain in space.items():
        if isinstance(domain, dict):
            if strategy == "grid":
                raise ValueError(f"grid search needs a list of values for {name}, got a range")
            if "low" not in domain or "high" not in domain:
                raise ValueError(f"range for {name} needs low and high")
        elif not isinstance(domain, Sequence) or isinstance(domain, str) or len(domain) == 0:
            raise ValueError(f"values for {name} must be a nonempty list")
    names = list(space.keys())
    if strategy == "grid":
        return [dict(zip(names, values)) for values in itertools.product(*(space[name] for name in names))]
    if strategy == "random":
        if budget < 1:
            raise ValueError(f"random search needs a budget of at least 1, got {budget}")
        return [{name: _sample_value(space[name], rng) for name in names} for _ in range(budget)]
    raise ValueError(f"unknown search strategy {strategy}, expected one of {list(STRATEGIES)}")


def _auc_key(score: ModelScore) -> float:
    return -math.inf if score.auc is None else score.auc


class HyperparameterSearch:
    """picks the candidate with the best cross validated auc, the earlier candidate on ties"""

    def __init__(self, cross_validator: Optional[CrossValidator] = None):
        if cross_validator is None:
            cross_validator = CrossValidator()
        self._cross_validator = cross_validator

    def search(
        self,
        kind: str,
        space: Dict[str, Any],
        strategy: str,
        budget: int,
        dataset: Dataset,
        seed: int,
        folds: int = 10,
        fixed_params: Optional[Dict[str, Any]] = None,
    ) -> SearchResult:
        rng = numpy.random.default_rng(seed)
        candidates = enumerate_candidates(space, strategy, budget, rng)
        fixed_params = {} if fixed_params is None else dict(fixed_params)
        trials: List[Trial] = []
        best: Optional[Trial] = None
        for params in candidates:
            try:
                trainer = ModelTrainerFactory.create(kind, {**fixed_params, **params})
                score = self._cross_validator.cross_validate(trainer, dataset, folds, seed)
            except (TypeError, ValueError) as error:
                logger.warning("search trial %s for %s failed: %s", params, kind, error)
                trials.append(Trial(params, error=str(error)))
                continue
            trial = Trial(params, score=score)
            logger.debug("search trial %s for %s scored %s", params, kind, score)
            trials.append(trial)
            if best is None or _auc_key(score) > _auc_key(best.score):  # type: ignore
                best = trial
        if best is None:
            raise ValueError(f"every one of the {len(trials)} search trials for {kind} failed")
        result = SearchResult(kind, strategy, {**fixed_params, **best.params}, best.score, trials)  # type: ignore
        logger.info("%s: %s", kind, result.describe())
        return result


def search_hyperparams(
    kind: str, space: Dict[str, Any], strategy: str, budget: int, dataset: Dataset, seed: int, folds: int = 10
) -> SearchResult:
    return HyperparameterSearch().search(kind, space, strategy, budget, dataset, seed, folds)
