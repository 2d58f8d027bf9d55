import math
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy

from evalxai.interface.models.i_model_trainer import IModelTrainer
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.decision_tree_model import LEAF, DecisionTreeModel

MaxFeatures = Optional[Union[str, int]]


def resolve_max_features(max_features: MaxFeatures, n_features: int) -> int:
    if max_features is None:
        return n_features
    if max_features == "sqrt":
        return max(1, int(math.sqrt(n_features)))
    if isinstance(max_features, int) and not isinstance(max_features, bool) and max_features >= 1:
        return min(max_features, n_features)
    raise ValueError(f"max_features must be 'sqrt', a positive count or None, got {max_features!r}")


def best_split(
    rows: numpy.ndarray, labels: numpy.ndarray, candidates: numpy.ndarray, min_samples_leaf: int
) -> Optional[Tuple[int, float]]:
    """

    lowest weighted gini split over midpoints between sorted distinct values, earlier candidates win ties
    :return: (feature, threshold) or None when no split leaves min_samples_leaf rows on both sides
             <Optional[Tuple[int, float]]>
    """
    n_rows = rows.shape[0]
    best: Optional[Tuple[int, float]] = None
    best_impurity = numpy.inf
    left_counts = numpy.arange(1, n_rows)
    right_counts = n_rows - left_counts
    for feature in candidates:
        order = numpy.argsort(rows[:, feature], kind="stable")
        values = rows[order, feature]
        positives_left = numpy.cumsum(labels[order])[:-1]
        positives_right = labels.sum() - positives_left
        impurity = (
            positives_left * (left_counts - positives_left) / left_counts
            + positives_right * (right_counts - positives_right) / right_counts
        )
        valid = (
            (values[:-1] < values[1:]) & (left_counts >= min_samples_leaf) & (right_counts >= min_samples_leaf)
        )
        if not numpy.any(valid):
            continue
        impurity = numpy.where(valid, impurity, numpy.inf)
        position = int(numpy.argmin(impurity))
        if impurity[position] < best_impurity:
            best_impurity = impurity[position]
            low, high = values[position], values[position + 1]
            threshold = low + (high - low) / 2.0
            # the midpoint of adjacent floats can round up onto the larger value
            if threshold >= high:
                threshold = low
            best = (int(feature), float(threshold))
    return best


class DecisionTreeTrainer(IModelTrainer):
    """cart with gini impurity, impure nodes are split whenever the structural limits allow it"""

    PARAMETERS = ("max_depth", "min_samples_split", "min_samples_leaf", "max_features")

    def __init__(
        self,
        max_depth: int = 6,
        min_samples_split: int = 10,
        min_samples_leaf: int = 5,
        max_features: MaxFeatures = None,
    ):
        if max_depth < 0:
            raise ValueError(f"max_depth must not be negative, got {max_depth}")
        if min_samples_split < 2:
            raise ValueError(f"min_samples_split must be at least 2, got {min_samples_split}")
        if min_samples_leaf < 1:
            raise ValueError(f"min_samples_leaf must be at least 1, got {min_samples_leaf}")
        resolve_max_features(max_features, 1)
        self._max_depth = int(max_depth)
        self._min_samples_split = int(min_samples_split)
        self._min_samples_leaf = int(min_samples_leaf)
        self._max_features = max_features

    @property
    def kind(self) -> str:
        return "decision_tree"

    @property
    def params(self) -> Dict[str, Any]:
        return {
            "max_depth": self._max_depth,
            "min_samples_split": self._min_samples_split,
            "min_samples_leaf": self._min_samples_leaf,
            "max_features": self._max_features,
        }

    def train(self, dataset: Dataset, seed: int) -> DecisionTreeModel:
        if dataset.n_rows == 0:
            raise ValueError("cannot train on an empty dataset")
        return self.build(dataset, dataset.rows, dataset.labels, numpy.random.default_rng(seed), seed)

    def build(
        self,
        dataset: Dataset,
        rows: numpy.ndarray,
        labels: numpy.ndarray,
        rng: numpy.random.Generator,
        seed: int,
    ) -> DecisionTreeModel:
        """grows a tree on the given rows, which may be a bootstrap resample of the dataset"""
        n_features = rows.shape[1]
        n_candidates = resolve_max_features(self._max_features, n_features)
        nodes: Dict[str, List[Any]] = {key: [] for key in ("feature", "threshold", "left", "right", "value", "n")}

        def add_node(indices: numpy.ndarray) -> int:
            nodes["feature"].append(LEAF)
            nodes["threshold"].append(0.0)
            nodes["left"].append(LEAF)
            nodes["right"].append(LEAF)
            nodes["value"].append(float(labels[indices].mean()))
            nodes["n"].append(int(indices.shape[0]))
            return len(nodes["feature"]) - 1

        def grow(node: int, indices: numpy.ndarray, depth: int):
            positives = labels[indices].sum()
            if (
                depth >= self._max_depth
                or indices.shape[0] < self._min_samples_split
                or positives in (0, indices.shape[0])
            ):
                return
            if n_candidates < n_features:
                candidates = numpy.sort(rng.choice(n_features, size=n_candidates, replace=False))
            else:
                candidates = numpy.arange(n_features)
            split = best_split(rows[indices], labels[indices], candidates, self._min_samples_leaf)
            if split is None:
                return
            feature, threshold = split
            goes_left = rows[indices, feature] <= threshold
            nodes["feature"][node] = feature
            nodes["threshold"][node] = threshold
            left = add_node(indices[goes_left])
            right = add_node(indices[~goes_left])
            nodes["left"][node] = left
            nodes["right"][node] = right
            grow(left, indices[goes_left], depth + 1)
            grow(right, indices[~goes_left], depth + 1)

        all_rows = numpy.arange(rows.shape[0])
        grow(add_node(all_rows), all_rows, 0)
        return DecisionTreeModel(
            dataset.feature_names,
            nodes["feature"],
            nodes["threshold"],
            nodes["left"],
            nodes["right"],
            nodes["value"],
            nodes["n"],
            {**self.params, "seed": seed},
        )


def train_tree(
    train: Dataset, max_depth: int, min_samples_split: int, min_samples_leaf: int, seed: int
) -> DecisionTreeModel:
    return DecisionTreeTrainer(max_depth, min_samples_split, min_samples_leaf).train(train, seed)
