import math
from typing import Dict, List, Tuple

import numpy

from evalxai.src.data.dataset import Dataset


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def stratified_test_quotas(class_counts: Dict[int, int], test_fraction: float) -> Dict[int, int]:
    """

    largest remainder allocation of round_half_up(test_fraction * n) test rows across classes,
    ties in the remainder go to the lower class label
    :return: test rows per class <Dict[int, int]>
    """
    total = _round_half_up(test_fraction * sum(class_counts.values()))
    exact = {label: test_fraction * count for label, count in class_counts.items()}
    quotas = {label: min(int(math.floor(value)), class_counts[label]) for label, value in exact.items()}
    by_remainder = sorted(class_counts, key=lambda label: (-(exact[label] - quotas[label]), label))
    remaining = total - sum(quotas.values())
    for label in by_remainder:
        if remaining <= 0:
            break
        if quotas[label] < class_counts[label]:
            quotas[label] += 1
            remaining -= 1
    return quotas


class DatasetSplitter:
    def __init__(self, test_fraction: float = 0.1, stratified: bool = True):
        if not 0.0 < test_fraction < 1.0:
            raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
        self._test_fraction = test_fraction
        self._stratified = stratified

    def split(self, dataset: Dataset, seed: int) -> Tuple[Dataset, Dataset]:
        rng = numpy.random.default_rng(seed)
        test_indices: List[numpy.ndarray] = []
        if self._stratified:
            if not dataset.has_both_classes():
                raise ValueError("stratified split needs both classes present")
            members = {label: numpy.flatnonzero(dataset.labels == label) for label in (0, 1)}
            quotas = stratified_test_quotas(
                {label: len(indices) for label, indices in members.items()}, self._test_fraction
            )
            for label in (0, 1):
                shuffled = rng.permutation(members[label])
                test_indices.append(shuffled[: quotas[label]])
        else:
            shuffled = rng.permutation(dataset.n_rows)
            test_indices.append(shuffled[: _round_half_up(self._test_fraction * dataset.n_rows)])

        test_mask = numpy.zeros(dataset.n_rows, dtype=bool)
        test_mask[numpy.concatenate(test_indices)] = True
        if test_mask.all() or not test_mask.any():
            raise ValueError(
                f"test_fraction {self._test_fraction} yields an empty split for {dataset.n_rows} rows"
            )
        return dataset.subset(numpy.flatnonzero(~test_mask)), dataset.subset(numpy.flatnonzero(test_mask))


def train_test_split(dataset: Dataset, test_fraction: float, stratified: bool, seed: int) -> Tuple[Dataset, Dataset]:
    return DatasetSplitter(test_fraction, stratified).split(dataset, seed)
