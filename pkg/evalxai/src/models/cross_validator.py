import logging
from typing import List, Optional

import numpy

from evalxai.interface.models.i_model_scorer import IModelScorer
from evalxai.interface.models.i_model_trainer import IModelTrainer
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.model_score import ModelScore
from evalxai.src.models.model_scorer import ModelScorer

logger = logging.getLogger(__name__)


def stratified_folds(labels: numpy.ndarray, k: int, seed: int) -> List[numpy.ndarray]:
    """

    deals the shuffled rows of each class round robin over the folds, continuing where the previous
    class stopped, so both the fold sizes and the per class counts differ by at most one
    :return: the sorted row indices of every test fold
             <List[numpy.ndarray]>
    """
    labels = numpy.asarray(labels)
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k > labels.shape[0]:
        raise ValueError(f"k={k} exceeds the {labels.shape[0]} available rows")
    rng = numpy.random.default_rng(seed)
    assignment = numpy.empty(labels.shape[0], dtype=numpy.int64)
    offset = 0
    for label in (0, 1):
        members = rng.permutation(numpy.flatnonzero(labels == label))
        assignment[members] = (offset + numpy.arange(members.shape[0])) % k
        offset += members.shape[0]
    return [numpy.flatnonzero(assignment == fold) for fold in range(k)]


def _mean_auc(scores: List[ModelScore]) -> Optional[float]:
    aucs = [score.auc for score in scores if score.auc is not None]
    if not aucs:
        return None
    return float(numpy.mean(aucs))


class CrossValidator:
    """stratified k fold, the mean of the per fold scores; fold aucs that are undefined are left out"""

    def __init__(self, scorer: Optional[IModelScorer] = None):
        if scorer is None:
            scorer = ModelScorer()
        self._scorer = scorer

    def cross_validate(self, trainer: IModelTrainer, dataset: Dataset, k: int, seed: int) -> ModelScore:
        scores = []
        for fold, test_indices in enumerate(stratified_folds(dataset.labels, k, seed)):
            train_mask = numpy.ones(dataset.n_rows, dtype=bool)
            train_mask[test_indices] = False
            train = dataset.subset(numpy.flatnonzero(train_mask))
            if not train.has_both_classes():
                raise ValueError(f"class absent from the training partition of fold {fold}")
            model = trainer.train(train, seed)
            scores.append(self._scorer.score(model, dataset.subset(test_indices)))
        mean_score = ModelScore(
            float(numpy.mean([score.accuracy for score in scores])),
            float(numpy.mean([score.f1 for score in scores])),
            _mean_auc(scores),
        )
        logger.debug("%d fold cross validation of %s: %s", k, trainer.kind, mean_score)
        return mean_score


def k_fold_cv(trainer: IModelTrainer, dataset: Dataset, k: int, seed: int) -> ModelScore:
    return CrossValidator().cross_validate(trainer, dataset, k, seed)
