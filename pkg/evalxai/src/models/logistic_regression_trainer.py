import logging
from typing import Any, Dict, Tuple

import numpy

from evalxai.interface.models.i_model_trainer import IModelTrainer
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.logistic_regression_model import LogisticRegressionModel

logger = logging.getLogger(__name__)


def logistic_loss_and_gradient(
    rows: numpy.ndarray, labels: numpy.ndarray, weights: numpy.ndarray, intercept: float, l2: float
) -> Tuple[float, numpy.ndarray, float]:
    """

    mean logistic loss plus 0.5 * l2 * |weights|^2, the intercept is not penalised
    :return: loss, gradient with respect to the weights, gradient with respect to the intercept
             <Tuple[float, numpy.ndarray, float]>
    """
    scores = rows @ weights + intercept
    loss = float(numpy.mean(numpy.logaddexp(0.0, scores) - labels * scores)) + 0.5 * l2 * float(weights @ weights)
    residual = numpy.exp(-numpy.logaddexp(0.0, -scores)) - labels
    gradient = rows.T @ residual / rows.shape[0] + l2 * weights
    return loss, gradient, float(numpy.mean(residual))


class LogisticRegressionTrainer(IModelTrainer):
    """
    full batch gradient descent on standardised features

    the penalty is applied as a proximal step w <- (w - rate * grad) / (1 + rate * l2), which stays
    stable for any l2 >= 0. the fitted standardisation is folded back into the weights.
    """

    PARAMETERS = ("learning_rate", "epochs", "l2")

    def __init__(self, learning_rate: float = 0.1, epochs: int = 300, l2: float = 1e-4):
        if learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {learning_rate}")
        if epochs < 0:
            raise ValueError(f"epochs must not be negative, got {epochs}")
        if l2 < 0:
            raise ValueError(f"l2 must not be negative, got {l2}")
        self._learning_rate = float(learning_rate)
        self._epochs = int(epochs)
        self._l2 = float(l2)

    @property
    def kind(self) -> str:
        return "logistic_regression"

    @property
    def params(self) -> Dict[str, Any]:
        return {"learning_rate": self._learning_rate, "epochs": self._epochs, "l2": self._l2}

    def train(self, dataset: Dataset, seed: int) -> LogisticRegressionModel:
        if dataset.n_rows == 0:
            raise ValueError("cannot train on an empty dataset")
        if not dataset.has_both_classes():
            raise ValueError("logistic regression needs both classes in the training data")

        means = dataset.rows.mean(axis=0)
        scales = dataset.rows.std(axis=0)
        scales[scales == 0] = 1.0
        standardised = (dataset.rows - means) / scales
        labels = dataset.labels.astype(float)

        weights = numpy.zeros(dataset.n_features)
        intercept = 0.0
        rate = self._learning_rate
        with numpy.errstate(over="ignore", invalid="ignore"):
            for epoch in range(self._epochs):
                loss, gradient, intercept_gradient = logistic_loss_and_gradient(
                    standardised, labels, weights, intercept, 0.0
                )
                if not numpy.isfinite(loss):
                    raise ValueError(f"non-finite loss at epoch {epoch}, learning_rate {rate} diverges")
                weights = (weights - rate * gradient) / (1.0 + rate * self._l2)
                intercept -= rate * intercept_gradient
            loss, _, _ = logistic_loss_and_gradient(standardised, labels, weights, intercept, self._l2)
        if not numpy.isfinite(loss) or not numpy.all(numpy.isfinite(weights)) or not numpy.isfinite(intercept):
            raise ValueError(f"non-finite loss after training, learning_rate {rate} diverges")
        logger.debug("logistic regression final loss %.6f after %d epochs", loss, self._epochs)

        raw_weights = weights / scales
        raw_intercept = intercept - float(raw_weights @ means)
        return LogisticRegressionModel(dataset.feature_names, raw_weights, raw_intercept, {**self.params, "seed": seed})


def train_logreg(train: Dataset, learning_rate: float, epochs: int, l2: float, seed: int) -> LogisticRegressionModel:
    return LogisticRegressionTrainer(learning_rate, epochs, l2).train(train, seed)
