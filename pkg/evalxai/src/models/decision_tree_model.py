from typing import Any, Dict, Sequence

import numpy

from evalxai.src.models.probability_model import ProbabilityModel

LEAF = -1


class DecisionTreeModel(ProbabilityModel):
    """
    binary tree stored as parallel node arrays, node 0 is the root

    internal nodes send x[feature] <= threshold to left and everything else to right. leaves have
    feature == LEAF and carry the positive class fraction of their training rows in value.
    """

    def __init__(
        self,
        feature_names: Sequence[str],
        feature: Sequence[int],
        threshold: Sequence[float],
        left: Sequence[int],
        right: Sequence[int],
        value: Sequence[float],
        n_samples: Sequence[int],
        params: Dict[str, Any],
    ):
        super().__init__(feature_names, params)
        self._feature = self._frozen(feature, numpy.int64)
        self._threshold = self._frozen(threshold, float)
        self._left = self._frozen(left, numpy.int64)
        self._right = self._frozen(right, numpy.int64)
        self._value = self._frozen(value, float)
        self._n_samples = self._frozen(n_samples, numpy.int64)
        self._validate()

    @staticmethod
    def _frozen(values: Sequence[Any], dtype: Any) -> numpy.ndarray:
        array = numpy.array(values, dtype=dtype)
        array.setflags(write=False)
        return array

    def _validate(self):
        n_nodes = self._feature.shape[0]
        if n_nodes == 0:
            raise ValueError("a tree needs at least one node")
        for name, array in (
            ("threshold", self._threshold),
            ("left", self._left),
            ("right", self._right),
            ("value", self._value),
            ("n_samples", self._n_samples),
        ):
            if array.shape != (n_nodes,):
                raise ValueError(f"{name} must have {n_nodes} entries, got shape {array.shape}")
        if numpy.any((self._value < 0) | (self._value > 1)):
            raise ValueError("leaf values must lie in [0, 1]")
        internal = self._feature != LEAF
        if numpy.any(self._feature[internal] >= len(self._feature_names)) or numpy.any(self._feature < LEAF):
            raise ValueError("split feature index out of range")
        children = numpy.concatenate([self._left[internal], self._right[internal]])
        if numpy.any(children <= 0) or numpy.any(children >= n_nodes):
            raise ValueError("child index out of range")

    @property
    def kind(self) -> str:
        return "decision_tree"

    @property
    def feature(self) -> numpy.ndarray:
        return self._feature

    @property
    def threshold(self) -> numpy.ndarray:
        return self._threshold

    @property
    def left(self) -> numpy.ndarray:
        return self._left

    @property
    def right(self) -> numpy.ndarray:
        return self._right

    @property
    def value(self) -> numpy.ndarray:
        return self._value

    @property
    def n_samples(self) -> numpy.ndarray:
        return self._n_samples

    @property
    def n_nodes(self) -> int:
        return int(self._feature.shape[0])

    def is_leaf(self, node: int) -> bool:
        return bool(self._feature[node] == LEAF)

    def depth(self) -> int:
        depths = numpy.zeros(self.n_nodes, dtype=numpy.int64)
        # children always come after their parent
        for node in range(self.n_nodes):
            if not self.is_leaf(node):
                depths[self._left[node]] = depths[node] + 1
                depths[self._right[node]] = depths[node] + 1
        return int(depths.max())

    def leaf_indices(self, rows: numpy.ndarray) -> numpy.ndarray:
        rows = self._check_rows(rows)
        nodes = numpy.zeros(rows.shape[0], dtype=numpy.int64)
        while True:
            active = numpy.flatnonzero(self._feature[nodes] != LEAF)
            if active.shape[0] == 0:
                return nodes
            current = nodes[active]
            go_left = rows[active, self._feature[current]] <= self._threshold[current]
            nodes[active] = numpy.where(go_left, self._left[current], self._right[current])

    def risks(self, rows: numpy.ndarray) -> numpy.ndarray:
        return self._value[self.leaf_indices(rows)]
