import numpy

from evalxai.interface.data.i_dataset_transform import IDatasetTransform
from evalxai.src.data.dataset import Dataset


class TestSetBalancer(IDatasetTransform):
    """random undersampling of the majority class down to the minority count, row order kept"""

    __test__ = False

    def __init__(self, seed: int = 0):
        self._seed = seed

    def apply(self, dataset: Dataset) -> Dataset:
        if not dataset.has_both_classes():
            raise ValueError("balancing needs both classes present")
        negatives, positives = dataset.class_counts()
        if negatives == positives:
            return dataset
        majority_label = 0 if negatives > positives else 1
        majority = numpy.flatnonzero(dataset.labels == majority_label)
        minority = numpy.flatnonzero(dataset.labels != majority_label)
        rng = numpy.random.default_rng(self._seed)
        kept = rng.choice(majority, size=len(minority), replace=False)
        return dataset.subset(numpy.sort(numpy.concatenate([kept, minority])))


def balance_test_set(dataset: Dataset, seed: int) -> Dataset:
    return TestSetBalancer(seed).apply(dataset)
