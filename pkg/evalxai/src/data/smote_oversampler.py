import logging

import numpy
from scipy.spatial.distance import cdist  # type: ignore

from evalxai.interface.data.i_dataset_transform import IDatasetTransform
from evalxai.src.data.dataset import Dataset

logger = logging.getLogger(__name__)


class SmoteOversampler(IDatasetTransform):
    """
    synthetic minority over-sampling

    each synthetic row is x + u * (neighbour - x) with u uniform in [0, 1] and the neighbour drawn
    from the k nearest (euclidean) minority rows of a randomly chosen minority row x. original rows
    are kept unchanged and come first.
    """

    def __init__(self, k: int = 5, seed: int = 0):
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        self._k = k
        self._seed = seed

    def apply(self, dataset: Dataset) -> Dataset:
        negatives, positives = dataset.class_counts()
        if negatives == positives:
            return dataset
        minority_label = 1 if positives < negatives else 0
        minority = dataset.rows[dataset.labels == minority_label]
        n_minority = minority.shape[0]
        if n_minority < 2:
            raise ValueError(f"minority class needs at least 2 rows to interpolate, got {n_minority}")

        needed = abs(negatives - positives)
        k = min(self._k, n_minority - 1)
        distances = cdist(minority, minority)
        numpy.fill_diagonal(distances, numpy.inf)
        neighbours = numpy.argsort(distances, axis=1, kind="stable")[:, :k]

        rng = numpy.random.default_rng(self._seed)
        bases = rng.integers(0, n_minority, size=needed)
        picks = neighbours[bases, rng.integers(0, k, size=needed)]
        gaps = rng.random((needed, 1))
        synthetic = minority[bases] + gaps * (minority[picks] - minority[bases])
        # the convex combination can round one ulp past the segment end point
        low = numpy.minimum(minority[bases], minority[picks])
        high = numpy.maximum(minority[bases], minority[picks])
        synthetic = numpy.clip(synthetic, low, high)

        logger.info("smote added %d synthetic rows of class %d", needed, minority_label)
        return dataset.concatenate(synthetic, numpy.full(needed, minority_label, dtype=numpy.int64))


def smote(dataset: Dataset, k: int, seed: int) -> Dataset:
    return SmoteOversampler(k, seed).apply(dataset)
