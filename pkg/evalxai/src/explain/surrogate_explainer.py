import logging
import math
from typing import Any, Dict, List, Optional

import numpy

from evalxai.interface.explain.i_explainer import IExplainer
from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.rule import Orientation, PredictedClass, Rule

logger = logging.getLogger(__name__)

COEFFICIENT_TOLERANCE = 1e-6


class SurrogateConfig:
    def __init__(
        self,
        num_samples: int = 1000,
        top_k: int = 3,
        kernel_width: Optional[float] = None,
        ridge_l2: float = 1.0,
        quantile_bins: int = 4,
    ):
        if top_k < 1:
            raise ValueError(f"top_k must be at least 1, got {top_k}")
        if num_samples < 10 * top_k:
            raise ValueError(f"num_samples must be at least 10 * top_k = {10 * top_k}, got {num_samples}")
        if kernel_width is not None and not kernel_width > 0:
            raise ValueError(f"kernel_width must be positive, got {kernel_width}")
        if ridge_l2 < 0:
            raise ValueError(f"ridge_l2 must not be negative, got {ridge_l2}")
        if quantile_bins < 2:
            raise ValueError(f"quantile_bins must be at least 2, got {quantile_bins}")
        self._num_samples = int(num_samples)
        self._top_k = int(top_k)
        self._kernel_width = None if kernel_width is None else float(kernel_width)
        self._ridge_l2 = float(ridge_l2)
        self._quantile_bins = int(quantile_bins)

    @staticmethod
    def from_dict(values: Dict[str, Any]) -> "SurrogateConfig":
        unknown = sorted(set(values) - {"num_samples", "top_k", "kernel_width", "ridge_l2", "quantile_bins"})
        if unknown:
            raise ValueError(f"unknown surrogate settings {unknown}")
        return SurrogateConfig(**values)

    @property
    def num_samples(self) -> int:
        return self._num_samples

    @property
    def top_k(self) -> int:
        return self._top_k

    @property
    def kernel_width(self) -> Optional[float]:
        return self._kernel_width

    @property
    def ridge_l2(self) -> float:
        return self._ridge_l2

    @property
    def quantile_bins(self) -> int:
        return self._quantile_bins

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_samples": self._num_samples,
            "top_k": self._top_k,
            "kernel_width": self._kernel_width,
            "ridge_l2": self._ridge_l2,
            "quantile_bins": self._quantile_bins,
        }

    def __str__(self) -> str:
        return f"{SurrogateConfig.__name__}: {self.to_dict()}"

    def __repr__(self) -> str:
        return self.__str__()


def weighted_ridge(design: numpy.ndarray, target: numpy.ndarray, weights: numpy.ndarray, l2: float) -> numpy.ndarray:
    """

    minimises sum_i w_i (y_i - b - x_i . beta)^2 + l2 |beta|^2 with an unpenalised intercept b
    :return: beta
             <numpy.ndarray>
    """
    total = weights.sum()
    design_mean = weights @ design / total
    target_mean = weights @ target / total
    root = numpy.sqrt(weights)[:, None]
    augmented_design = numpy.vstack([root * (design - design_mean), math.sqrt(l2) * numpy.eye(design.shape[1])])
    augmented_target = numpy.concatenate([root[:, 0] * (target - target_mean), numpy.zeros(design.shape[1])])
    coefficients, *_ = numpy.linalg.lstsq(augmented_design, augmented_target, rcond=None)
    return coefficients


class SurrogateExplainer(IExplainer):
    """
    local surrogate over quantile bins of a background dataset

    perturbations pick a random bin per feature and a uniform value inside it, the first sample is the
    instance itself. samples are weighted by exp(-d^2 / kernel_width^2) with d the euclidean distance in
    background standard deviations, and a weighted ridge regression of the model risk on "same bin as the
    instance" indicators ranks the features. each kept feature yields one one sided rule at a boundary of
    the instance's bin: the single interior boundary for edge bins. inner bins take the lower boundary for
    a MoreThan rule and the upper boundary for a LessThan rule.
    constant background features never receive a rule.
    """

    def __init__(self, background: Dataset, config: Optional[SurrogateConfig] = None, explainer_id: str = "surrogate"):
        if config is None:
            config = SurrogateConfig()
        if background.n_rows == 0:
            raise ValueError("the surrogate needs a nonempty background dataset")
        self._config = config
        self._explainer_id = explainer_id
        self._feature_names = background.feature_names
        rows = background.rows
        self._minimums = rows.min(axis=0)
        self._maximums = rows.max(axis=0)
        self._scales = rows.std(axis=0)
        levels = numpy.arange(1, config.quantile_bins) / config.quantile_bins
        self._boundaries: List[numpy.ndarray] = []
        self._candidates: List[int] = []
        for feature in range(background.n_features):
            interior = numpy.unique(numpy.quantile(rows[:, feature], levels))
            interior = interior[interior < self._maximums[feature]]
            self._boundaries.append(interior)
            if self._maximums[feature] > self._minimums[feature] and interior.shape[0] > 0:
                self._candidates.append(feature)
        if config.kernel_width is None:
            self._kernel_width = 0.75 * math.sqrt(max(len(self._candidates), 1))
        else:
            self._kernel_width = config.kernel_width

    @property
    def explainer_id(self) -> str:
        return self._explainer_id

    @property
    def config(self) -> SurrogateConfig:
        return self._config

    @property
    def candidate_features(self) -> List[str]:
        return [self._feature_names[feature] for feature in self._candidates]

    def boundaries(self, feature: str) -> numpy.ndarray:
        return self._boundaries[self._feature_names.index(feature)]

    def explain(self, model: IProbabilityModel, instance: numpy.ndarray, instance_id: str, seed: int) -> Explanation:
        instance = numpy.asarray(instance, dtype=float)
        risk = model.risk(instance)
        predicted_class = PredictedClass.from_risk(risk)
        if not self._candidates:
            logger.debug("no non constant background feature to explain instance %s", instance_id)
            return Explanation(instance_id, predicted_class, risk, [], self._explainer_id, seed)

        rng = numpy.random.default_rng(seed)
        n_samples = self._config.num_samples
        samples = numpy.tile(instance, (n_samples, 1))
        indicators = numpy.ones((n_samples, len(self._candidates)))
        instance_bins = []
        for column, feature in enumerate(self._candidates):
            interior = self._boundaries[feature]
            lows = numpy.concatenate([[self._minimums[feature]], interior])
            highs = numpy.concatenate([interior, [self._maximums[feature]]])
            instance_bin = int(numpy.searchsorted(interior, instance[feature], side="left"))
            instance_bins.append(instance_bin)
            bins = rng.integers(0, lows.shape[0], size=n_samples)
            values = rng.uniform(lows[bins], highs[bins])
            samples[1:, feature] = values[1:]
            indicators[1:, column] = bins[1:] == instance_bin

        offsets = (samples[:, self._candidates] - instance[self._candidates]) / self._scales[self._candidates]
        distances_squared = numpy.sum(offsets**2, axis=1)
        weights = numpy.exp(-distances_squared / self._kernel_width**2)
        coefficients = weighted_ridge(indicators, model.risks(samples), weights, self._config.ridge_l2)

        order = numpy.argsort(-numpy.abs(coefficients), kind="stable")
        rules = []
        for column in order[: self._config.top_k]:
            coefficient = coefficients[column]
            if abs(coefficient) <= COEFFICIENT_TOLERANCE:
                break
            feature = self._candidates[column]
            rules.append(
                self._rule(feature, instance_bins[column], coefficient, predicted_class is PredictedClass.POSITIVE)
            )
        if not rules:
            logger.debug("surrogate found no effect above tolerance for instance %s", instance_id)
        return Explanation(instance_id, predicted_class, risk, rules, self._explainer_id, seed)

    def _rule(self, feature: int, instance_bin: int, coefficient: float, positive: bool) -> Rule:
        interior = self._boundaries[feature]
        # staying in the bin supports the prediction when the bin effect pushes toward the predicted class
        supports = (coefficient > 0) == positive
        name = self._feature_names[feature]
        if instance_bin == 0:
            return Rule(name, Orientation.LESS_THAN if supports else Orientation.MORE_THAN, interior[0])
        if instance_bin == interior.shape[0]:
            return Rule(name, Orientation.MORE_THAN if supports else Orientation.LESS_THAN, interior[-1])
        if supports:
            return Rule(name, Orientation.MORE_THAN, interior[instance_bin - 1])
        return Rule(name, Orientation.LESS_THAN, interior[instance_bin])


def surrogate_explain(
    model: IProbabilityModel,
    instance: numpy.ndarray,
    background: Dataset,
    config: SurrogateConfig,
    seed: int,
    instance_id: str = "0",
) -> Explanation:
    return SurrogateExplainer(background, config).explain(model, instance, instance_id, seed)
