from typing import Any, Dict, Sequence

import numpy
from scipy.special import expit  # type: ignore

from evalxai.src.models.probability_model import ProbabilityModel


class LogisticRegressionModel(ProbabilityModel):
    """risk(x) = sigmoid(weights . x + intercept) on raw feature units"""

    def __init__(
        self,
        feature_names: Sequence[str],
        weights: Sequence[float],
        intercept: float,
        params: Dict[str, Any],
    ):
        super().__init__(feature_names, params)
        weights = numpy.array(weights, dtype=float)
        if weights.shape != (len(self._feature_names),):
            raise ValueError(f"expected {len(self._feature_names)} weights, got shape {weights.shape}")
        if not numpy.all(numpy.isfinite(weights)) or not numpy.isfinite(intercept):
            raise ValueError("weights and intercept must be finite")
        weights.setflags(write=False)
        self._weights = weights
        self._intercept = float(intercept)

    @property
    def kind(self) -> str:
        return "logistic_regression"

    @property
    def weights(self) -> numpy.ndarray:
        return self._weights

    @property
    def intercept(self) -> float:
        return self._intercept

    def risks(self, rows: numpy.ndarray) -> numpy.ndarray:
        return expit(self._check_rows(rows) @ self._weights + self._intercept)
