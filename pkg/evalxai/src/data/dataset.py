from typing import Dict, List, Optional, Sequence, Tuple

import numpy

from evalxai.src.data.feature_spec import FeatureSpec


def _read_only(array: numpy.ndarray) -> numpy.ndarray:
    array = numpy.array(array, copy=True)
    array.setflags(write=False)
    return array


class Dataset:
    """
    feature matrix with binary labels, one row per instance

    rows, labels and row ids are stored as read only copies so a dataset can be shared between
    worker threads without locking.
    """

    def __init__(
        self,
        features: Sequence[FeatureSpec],
        rows: numpy.ndarray,
        labels: numpy.ndarray,
        row_ids: Optional[numpy.ndarray] = None,
    ):
        self._features: Tuple[FeatureSpec, ...] = tuple(features)
        rows = numpy.asarray(rows, dtype=numpy.float64)
        labels = numpy.asarray(labels)
        if rows.ndim == 1 and rows.size == 0:
            rows = rows.reshape(0, len(self._features))

        names = [feature.name for feature in self._features]
        if len(set(names)) != len(names):
            duplicates = sorted({name for name in names if names.count(name) > 1})
            raise ValueError(f"duplicate feature names {duplicates}")
        if rows.ndim != 2 or rows.shape[1] != len(self._features):
            raise ValueError(f"rows must have shape (n, {len(self._features)}), got {rows.shape}")
        if not numpy.all(numpy.isfinite(rows)):
            raise ValueError("all feature values must be finite")
        if labels.ndim != 1 or labels.shape[0] != rows.shape[0]:
            raise ValueError(f"expected {rows.shape[0]} labels, got {labels.shape}")
        if labels.size and not numpy.all(numpy.isin(labels, (0, 1))):
            raise ValueError("labels must be 0 or 1")

        if row_ids is None:
            row_ids = numpy.arange(rows.shape[0], dtype=numpy.int64)
        row_ids = numpy.asarray(row_ids, dtype=numpy.int64)
        if row_ids.shape != labels.shape:
            raise ValueError(f"expected {rows.shape[0]} row ids, got {row_ids.shape}")

        self._rows = _read_only(rows)
        self._labels = _read_only(labels.astype(numpy.int64))
        self._row_ids = _read_only(row_ids)
        self._index: Dict[str, int] = {name: index for index, name in enumerate(names)}

    @property
    def features(self) -> Tuple[FeatureSpec, ...]:
        return self._features

    @property
    def feature_names(self) -> List[str]:
        return [feature.name for feature in self._features]

    @property
    def rows(self) -> numpy.ndarray:
        return self._rows

    @property
    def labels(self) -> numpy.ndarray:
        return self._labels

    @property
    def row_ids(self) -> numpy.ndarray:
        return self._row_ids

    @property
    def n_rows(self) -> int:
        return int(self._rows.shape[0])

    @property
    def n_features(self) -> int:
        return len(self._features)

    def feature_index(self, name: str) -> int:
        if name not in self._index:
            raise KeyError(f"unknown feature {name}")
        return self._index[name]

    def has_feature(self, name: str) -> bool:
        return name in self._index

    def class_counts(self) -> Tuple[int, int]:
        positives = int(numpy.sum(self._labels))
        return self.n_rows - positives, positives

    def has_both_classes(self) -> bool:
        negatives, positives = self.class_counts()
        return negatives > 0 and positives > 0

    def subset(self, indices: Sequence[int]) -> "Dataset":
        indices = numpy.asarray(indices, dtype=numpy.int64)
        return Dataset(self._features, self._rows[indices], self._labels[indices], self._row_ids[indices])

    def select_features(self, names: Sequence[str]) -> "Dataset":
        columns = [self.feature_index(name) for name in names]
        return Dataset(
            [self._features[column] for column in columns],
            self._rows[:, columns],
            self._labels,
            self._row_ids,
        )

    def concatenate(self, rows: numpy.ndarray, labels: numpy.ndarray) -> "Dataset":
        """

        appends rows with freshly allocated row ids above the current maximum
        :return: new dataset <Dataset>
        """
        rows = numpy.asarray(rows, dtype=numpy.float64).reshape(-1, self.n_features)
        start = int(self._row_ids.max()) + 1 if self.n_rows else 0
        new_ids = numpy.arange(start, start + rows.shape[0], dtype=numpy.int64)
        return Dataset(
            self._features,
            numpy.vstack([self._rows, rows]),
            numpy.concatenate([self._labels, numpy.asarray(labels, dtype=numpy.int64)]),
            numpy.concatenate([self._row_ids, new_ids]),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return False
        return (
            self._features == other.features
            and numpy.array_equal(self._rows, other.rows)
            and numpy.array_equal(self._labels, other.labels)
            and numpy.array_equal(self._row_ids, other.row_ids)
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    __hash__ = None  # type: ignore

    def __str__(self) -> str:
        negatives, positives = self.class_counts()
        return (
            f"{Dataset.__name__}: features={self.feature_names}, rows={self.n_rows}, "
            f"negatives={negatives}, positives={positives}"
        )

    def __repr__(self) -> str:
        return self.__str__()
