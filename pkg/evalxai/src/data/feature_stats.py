from typing import Dict, Iterator, List, Tuple

import numpy

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec


class FeatureStat:
    def __init__(self, mean: float, std: float, minimum: float, maximum: float):
        self._mean = float(mean)
        self._std = float(std)
        self._minimum = float(minimum)
        self._maximum = float(maximum)

    @property
    def mean(self) -> float:
        return self._mean

    @property
    def std(self) -> float:
        return self._std

    @property
    def minimum(self) -> float:
        return self._minimum

    @property
    def maximum(self) -> float:
        return self._maximum

    def __eq__(self, other: object) -> bool:
        return str(self) == str(other)

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.__str__())

    def __str__(self) -> str:
        return (
            f"{FeatureStat.__name__}: mean={self._mean!r}, std={self._std!r}, "
            f"min={self._minimum!r}, max={self._maximum!r}"
        )

    def __repr__(self) -> str:
        return self.__str__()


class FeatureStats:
    """per feature mean, sample standard deviation (n - 1 denominator), min and max"""

    def __init__(self, features: Tuple[FeatureSpec, ...], stats: Dict[str, FeatureStat]):
        missing = [feature.name for feature in features if feature.name not in stats]
        if missing:
            raise ValueError(f"missing statistics for features {missing}")
        self._features = tuple(features)
        self._stats = {feature.name: stats[feature.name] for feature in features}

    @staticmethod
    def from_dataset(dataset: Dataset) -> "FeatureStats":
        if dataset.n_rows < 2:
            raise ValueError(f"feature statistics need at least 2 rows, got {dataset.n_rows}")
        rows = dataset.rows
        minimums = numpy.min(rows, axis=0)
        maximums = numpy.max(rows, axis=0)
        # rounding in the mean may step outside the observed range
        means = numpy.clip(numpy.mean(rows, axis=0), minimums, maximums)
        stds = numpy.std(rows, axis=0, ddof=1)
        stats = {
            feature.name: FeatureStat(means[index], stds[index], minimums[index], maximums[index])
            for index, feature in enumerate(dataset.features)
        }
        return FeatureStats(dataset.features, stats)

    @property
    def features(self) -> Tuple[FeatureSpec, ...]:
        return self._features

    @property
    def feature_names(self) -> List[str]:
        return [feature.name for feature in self._features]

    def has(self, name: str) -> bool:
        return name in self._stats

    def get(self, name: str) -> FeatureStat:
        if name not in self._stats:
            raise KeyError(f"no statistics for feature {name}")
        return self._stats[name]

    def std_vector(self) -> numpy.ndarray:
        return numpy.array([self._stats[feature.name].std for feature in self._features])

    def __len__(self) -> int:
        return len(self._stats)

    def __iter__(self) -> Iterator[Tuple[str, FeatureStat]]:
        return iter(self._stats.items())

    def __str__(self) -> str:
        return f"{FeatureStats.__name__}: {self._stats}"

    def __repr__(self) -> str:
        return self.__str__()


def feature_stats(dataset: Dataset) -> FeatureStats:
    return FeatureStats.from_dataset(dataset)
