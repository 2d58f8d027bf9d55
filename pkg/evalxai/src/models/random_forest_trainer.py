import logging
from typing import Any, Dict

import numpy

from evalxai.interface.models.i_model_trainer import IModelTrainer
from evalxai.src.data.dataset import Dataset
from evalxai.src.models.decision_tree_trainer import DecisionTreeTrainer, MaxFeatures
from evalxai.src.models.random_forest_model import RandomForestModel

logger = logging.getLogger(__name__)


class RandomForestTrainer(IModelTrainer):
    """
    bagged cart trees with a fresh feature subsample at every split

    tree i draws its bootstrap resample and split subsamples from the i-th child of SeedSequence(seed),
    so a forest is reproducible from its seed alone.
    """

    PARAMETERS = ("n_estimators", "max_features", "bootstrap", "max_depth", "min_samples_split", "min_samples_leaf")

    def __init__(
        self,
        n_estimators: int = 50,
        max_features: MaxFeatures = "sqrt",
        bootstrap: bool = True,
        max_depth: int = 8,
        min_samples_split: int = 2,
        min_samples_leaf: int = 2,
    ):
        if n_estimators < 1:
            raise ValueError(f"n_estimators must be at least 1, got {n_estimators}")
        self._n_estimators = int(n_estimators)
        self._bootstrap = bool(bootstrap)
        self._tree_trainer = DecisionTreeTrainer(max_depth, min_samples_split, min_samples_leaf, max_features)

    @property
    def kind(self) -> str:
        return "random_forest"

    @property
    def params(self) -> Dict[str, Any]:
        tree_params = self._tree_trainer.params
        return {
            "n_estimators": self._n_estimators,
            "max_features": tree_params["max_features"],
            "bootstrap": self._bootstrap,
            "max_depth": tree_params["max_depth"],
            "min_samples_split": tree_params["min_samples_split"],
            "min_samples_leaf": tree_params["min_samples_leaf"],
        }

    def train(self, dataset: Dataset, seed: int) -> RandomForestModel:
        if dataset.n_rows == 0:
            raise ValueError("cannot train on an empty dataset")
        children = numpy.random.SeedSequence(seed % 2**64).spawn(self._n_estimators)
        trees = []
        tree_seeds = []
        for child in children:
            tree_seed = int(child.generate_state(1, numpy.uint64)[0])
            rng = numpy.random.default_rng(tree_seed)
            if self._bootstrap:
                indices = rng.integers(0, dataset.n_rows, size=dataset.n_rows)
            else:
                indices = numpy.arange(dataset.n_rows)
            trees.append(
                self._tree_trainer.build(dataset, dataset.rows[indices], dataset.labels[indices], rng, tree_seed)
            )
            tree_seeds.append(tree_seed)
        logger.debug("random forest trained %d trees", len(trees))
        return RandomForestModel(dataset.feature_names, trees, tree_seeds, {**self.params, "seed": seed})


def train_forest(
    train: Dataset,
    n_estimators: int,
    max_features: MaxFeatures,
    bootstrap: bool,
    max_depth: int,
    min_samples_split: int,
    min_samples_leaf: int,
    seed: int,
) -> RandomForestModel:
    return RandomForestTrainer(
        n_estimators, max_features, bootstrap, max_depth, min_samples_split, min_samples_leaf
    ).train(train, seed)
