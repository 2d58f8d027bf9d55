from typing import Optional

import numpy
from scipy.stats import rankdata  # type: ignore

from evalxai.interface.models.i_model_scorer import IModelScorer
from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.model_score import ModelScore
from evalxai.src.models.probability_model import classify_risks


def roc_auc(labels: numpy.ndarray, risks: numpy.ndarray) -> Optional[float]:
    """

    mann-whitney statistic with average ranks, so tied risks count half a win
    :return: the auc, or None when only one class is present
             <Optional[float]>
    """
    labels = numpy.asarray(labels)
    n_positive = int(numpy.sum(labels == 1))
    n_negative = labels.shape[0] - n_positive
    if n_positive == 0 or n_negative == 0:
        return None
    ranks = rankdata(risks)
    rank_sum = float(numpy.sum(ranks[labels == 1]))
    return (rank_sum - n_positive * (n_positive + 1) / 2.0) / (n_positive * n_negative)


def f1_score(labels: numpy.ndarray, predictions: numpy.ndarray) -> float:
    true_positive = int(numpy.sum((predictions == 1) & (labels == 1)))
    predicted = int(numpy.sum(predictions == 1))
    actual = int(numpy.sum(labels == 1))
    if predicted + actual == 0:
        return 0.0
    return 2.0 * true_positive / (predicted + actual)


class ModelScorer(IModelScorer):
    def score(self, model: IProbabilityModel, dataset: Dataset) -> ModelScore:
        if dataset.n_rows == 0:
            raise ValueError("cannot score on an empty dataset")
        risks = model.risks(dataset.rows)
        predictions = classify_risks(risks)
        accuracy = float(numpy.mean(predictions == dataset.labels))
        return ModelScore(accuracy, f1_score(dataset.labels, predictions), roc_auc(dataset.labels, risks))


def score_model(model: IProbabilityModel, test: Dataset) -> ModelScore:
    return ModelScorer().score(model, test)
