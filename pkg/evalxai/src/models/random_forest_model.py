from typing import Any, Dict, List, Sequence

import numpy

from evalxai.src.models.decision_tree_model import DecisionTreeModel
from evalxai.src.models.probability_model import ProbabilityModel


class RandomForestModel(ProbabilityModel):
    """risk is the arithmetic mean of the tree leaf fractions"""

    def __init__(
        self,
        feature_names: Sequence[str],
        trees: Sequence[DecisionTreeModel],
        tree_seeds: Sequence[int],
        params: Dict[str, Any],
    ):
        super().__init__(feature_names, params)
        if len(trees) == 0:
            raise ValueError("a forest needs at least one tree")
        if len(tree_seeds) != len(trees):
            raise ValueError(f"expected {len(trees)} tree seeds, got {len(tree_seeds)}")
        for tree in trees:
            if tree.feature_names != self._feature_names:
                raise ValueError("every tree must use the forest feature order")
        self._trees = tuple(trees)
        self._tree_seeds = tuple(int(tree_seed) for tree_seed in tree_seeds)

    @property
    def kind(self) -> str:
        return "random_forest"

    @property
    def trees(self) -> List[DecisionTreeModel]:
        return list(self._trees)

    @property
    def tree_seeds(self) -> List[int]:
        return list(self._tree_seeds)

    def risks(self, rows: numpy.ndarray) -> numpy.ndarray:
        rows = self._check_rows(rows)
        return numpy.mean([tree.risks(rows) for tree in self._trees], axis=0)
