from typing import Sequence

import numpy
from scipy.special import expit  # type: ignore

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec


class SyntheticDatasetGenerator:
    """
    standard normal features with logistic labels

    label is 1 with probability sigmoid(coefficients . x + intercept), then flipped with probability
    label_noise.
    """

    def __init__(self, coefficients: Sequence[float], intercept: float = 0.0, label_noise: float = 0.0):
        if len(coefficients) == 0:
            raise ValueError("coefficients must not be empty")
        if not 0.0 <= label_noise < 0.5:
            raise ValueError(f"label_noise must be in [0, 0.5), got {label_noise}")
        self._coefficients = numpy.asarray(coefficients, dtype=numpy.float64)
        self._intercept = float(intercept)
        self._label_noise = float(label_noise)

    def generate(self, n_rows: int, seed: int) -> Dataset:
        if n_rows <= 0:
            raise ValueError(f"n_rows must be positive, got {n_rows}")
        rng = numpy.random.default_rng(seed)
        rows = rng.standard_normal((n_rows, self._coefficients.shape[0]))
        probabilities = expit(rows @ self._coefficients + self._intercept)
        labels = rng.random(n_rows) < probabilities
        flips = rng.random(n_rows) < self._label_noise
        labels = numpy.logical_xor(labels, flips).astype(numpy.int64)
        features = [FeatureSpec(f"f{index + 1}") for index in range(self._coefficients.shape[0])]
        return Dataset(features, rows, labels)


def generate_synthetic(
    n_rows: int, coefficients: Sequence[float], intercept: float, label_noise: float, seed: int
) -> Dataset:
    return SyntheticDatasetGenerator(coefficients, intercept, label_noise).generate(n_rows, seed)
