import logging
from typing import List, Optional

import numpy
from scipy.stats import rankdata  # type: ignore

from evalxai.interface.data.i_dataset_transform import IDatasetTransform
from evalxai.src.data.dataset import Dataset

logger = logging.getLogger(__name__)


def spearman_matrix(rows: numpy.ndarray) -> numpy.ndarray:
    """

    pairwise spearman correlation of the columns, constant columns correlate 0 with everything
    :return: symmetric matrix with a unit diagonal <numpy.ndarray>
    """
    ranks = numpy.apply_along_axis(rankdata, 0, rows)
    centred = ranks - ranks.mean(axis=0)
    norms = numpy.sqrt(numpy.sum(centred**2, axis=0))
    safe = numpy.where(norms > 0, norms, 1.0)
    correlation = (centred.T @ centred) / numpy.outer(safe, safe)
    correlation[norms == 0, :] = 0.0
    correlation[:, norms == 0] = 0.0
    numpy.fill_diagonal(correlation, 1.0)
    return numpy.clip(correlation, -1.0, 1.0)


def variance_inflation_factors(rows: numpy.ndarray) -> numpy.ndarray:
    n_rows, n_columns = rows.shape
    factors = numpy.ones(n_columns)
    for column in range(n_columns):
        target = rows[:, column]
        others = numpy.delete(rows, column, axis=1)
        design = numpy.column_stack([numpy.ones(n_rows), others])
        coefficients, *_ = numpy.linalg.lstsq(design, target, rcond=None)
        residual = target - design @ coefficients
        total = numpy.sum((target - target.mean()) ** 2)
        if total == 0:
            continue
        r_squared = 1.0 - numpy.sum(residual**2) / total
        factors[column] = numpy.inf if r_squared >= 1.0 else 1.0 / (1.0 - r_squared)
    return factors


class SpearmanFilter(IDatasetTransform):
    """
    greedy correlation filter

    while some pair of kept features has |rho| > rho_threshold, the most correlated pair is taken and
    the member with the higher mean absolute correlation to the other kept features is dropped (the
    later feature on ties). an optional second stage drops the feature with the largest variance
    inflation factor while it exceeds vif_threshold.
    """

    def __init__(self, rho_threshold: float = 0.7, vif_threshold: Optional[float] = None):
        if not 0.0 < rho_threshold <= 1.0:
            raise ValueError(f"rho_threshold must be in (0, 1], got {rho_threshold}")
        if vif_threshold is not None and vif_threshold <= 1.0:
            raise ValueError(f"vif_threshold must be above 1, got {vif_threshold}")
        self._rho_threshold = rho_threshold
        self._vif_threshold = vif_threshold

    def apply(self, dataset: Dataset) -> Dataset:
        if dataset.n_rows < 2 or dataset.n_features < 2:
            return dataset
        correlation = numpy.abs(spearman_matrix(dataset.rows))
        kept: List[int] = list(range(dataset.n_features))

        while len(kept) > 1:
            sub = correlation[numpy.ix_(kept, kept)]
            upper = numpy.triu(sub, k=1)
            if upper.max() <= self._rho_threshold:
                break
            first, second = numpy.unravel_index(int(numpy.argmax(upper)), upper.shape)
            mean_correlation = (sub.sum(axis=1) - 1.0) / (len(kept) - 1)
            dropped = kept[first] if mean_correlation[first] > mean_correlation[second] else kept[second]
            logger.debug("spearman filter drops %s", dataset.feature_names[dropped])
            kept.remove(dropped)

        if self._vif_threshold is not None:
            while len(kept) > 1:
                factors = variance_inflation_factors(dataset.rows[:, kept])
                worst = int(numpy.argmax(factors))
                if factors[worst] <= self._vif_threshold:
                    break
                logger.debug("vif filter drops %s", dataset.feature_names[kept[worst]])
                del kept[worst]

        if len(kept) == dataset.n_features:
            return dataset
        names = [dataset.feature_names[index] for index in kept]
        logger.info("correlation filter kept %d of %d features", len(names), dataset.n_features)
        return dataset.select_features(names)


def spearman_filter(dataset: Dataset, rho_threshold: float) -> Dataset:
    return SpearmanFilter(rho_threshold).apply(dataset)
