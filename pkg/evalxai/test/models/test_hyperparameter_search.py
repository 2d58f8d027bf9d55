from unittest import TestCase
from unittest.mock import create_autospec

import numpy

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.data.synthetic_dataset_generator import generate_synthetic
from evalxai.src.models.cross_validator import CrossValidator
from evalxai.src.models.hyperparameter_search import (
    HyperparameterSearch,
    SearchResult,
    Trial,
    enumerate_candidates,
    search_hyperparams,
)
from evalxai.src.models.model_score import ModelScore


def _difference_driven(n_rows: int, seed: int) -> Dataset:
    """two strongly correlated features whose label depends only on their difference"""
    rng = numpy.random.default_rng(seed)
    shared = rng.standard_normal(n_rows)
    noise = rng.standard_normal(n_rows)
    rows = numpy.column_stack([shared, shared + 0.5 * noise])
    labels = (rng.random(n_rows) < 1.0 / (1.0 + numpy.exp(-4.0 * noise))).astype(int)
    return Dataset([FeatureSpec("f1"), FeatureSpec("f2")], rows, labels)


class TestHyperparameterSearch(TestCase):
    def test_single_point_space(self):
        result = search_hyperparams(
            "decision_tree", {"max_depth": [2]}, "grid", 1, generate_synthetic(60, [1.0], 0.0, 0.0, 0), 0, folds=3
        )
        self.assertEqual({"max_depth": 2}, result.best_params)
        self.assertEqual(1, len(result.trials))

    def test_huge_l2_loses(self):
        space = {"l2": [1e6, 0.01], "learning_rate": [1.0], "epochs": [1000]}
        result = search_hyperparams("logistic_regression", space, "grid", 1, _difference_driven(400, 2), 3, folds=5)
        self.assertEqual(0.01, result.best_params["l2"])
        first, second = result.trials
        self.assertGreater(second.score.auc, first.score.auc)

    def test_describe(self):
        best_params = {"l2": 2.78, "epochs": 130}
        result = SearchResult("logistic_regression", "grid", best_params, ModelScore(0.7, 0.6, 0.6979), [])
        self.assertEqual("Grid search AUC 0.6979, l2: 2.78, epochs: 130", result.describe())

    def test_describe_spaces_parameter_names(self):
        result = SearchResult("random_forest", "random", {"max_features": "sqrt"}, ModelScore(0.5, 0.5, 0.81234), [])
        self.assertEqual("Random search AUC 0.8123, max features: sqrt", result.describe())

    def test_failed_trials_are_recorded(self):
        result = search_hyperparams(
            "logistic_regression", {"epochs": [-1, 10]}, "grid", 1, generate_synthetic(60, [1.0], 0.0, 0.0, 1), 0, 3
        )
        self.assertTrue(result.trials[0].failed)
        self.assertIn("epochs", result.trials[0].error)
        self.assertEqual({"epochs": 10}, result.best_params)

    def test_mistyped_values_fail_their_trial(self):
        result = search_hyperparams(
            "decision_tree", {"max_depth": ["deep", 2]}, "grid", 1, generate_synthetic(60, [1.0], 0.0, 0.0, 1), 0, 3
        )
        self.assertTrue(result.trials[0].failed)
        self.assertEqual({"max_depth": 2}, result.best_params)

    def test_every_trial_failing(self):
        with self.assertRaises(ValueError):
            search_hyperparams(
                "logistic_regression", {"epochs": [-1, -2]}, "grid", 1, generate_synthetic(60, [1.0], 0, 0, 1), 0, 3
            )

    def test_ties_go_to_earlier_candidate(self):
        validator = create_autospec(CrossValidator)
        validator.cross_validate.return_value = ModelScore(0.5, 0.5, 0.5)
        result = HyperparameterSearch(validator).search(
            "decision_tree", {"max_depth": [1, 2, 3]}, "grid", 1, generate_synthetic(30, [1.0], 0, 0, 0), 0
        )
        self.assertEqual({"max_depth": 1}, result.best_params)
        self.assertEqual(3, validator.cross_validate.call_count)

    def test_grid_is_full_cross_product(self):
        candidates = enumerate_candidates({"a": [1, 2], "b": ["x", "y", "z"]}, "grid", 0, numpy.random.default_rng(0))
        self.assertEqual(6, len(candidates))
        self.assertEqual({"a": 1, "b": "x"}, candidates[0])
        self.assertEqual({"a": 2, "b": "z"}, candidates[-1])

    def test_random_budget_and_ranges(self):
        space = {"l2": {"low": 1e-4, "high": 1.0, "log": True}, "epochs": {"low": 10, "high": 20, "integer": True}}
        first = enumerate_candidates(space, "random", 25, numpy.random.default_rng(4))
        second = enumerate_candidates(space, "random", 25, numpy.random.default_rng(4))
        self.assertEqual(first, second)
        self.assertEqual(25, len(first))
        for candidate in first:
            self.assertTrue(1e-4 <= candidate["l2"] <= 1.0)
            self.assertIn(candidate["epochs"], range(10, 21))

    def test_invalid_spaces(self):
        rng = numpy.random.default_rng(0)
        with self.assertRaises(ValueError):
            enumerate_candidates({}, "grid", 1, rng)
        with self.assertRaises(ValueError):
            enumerate_candidates({"l2": {"low": 0.1, "high": 1.0}}, "grid", 1, rng)
        with self.assertRaises(ValueError):
            enumerate_candidates({"l2": [0.1]}, "random", 0, rng)
        with self.assertRaises(ValueError):
            enumerate_candidates({"l2": [0.1]}, "bayesian", 1, rng)

    def test_trial_needs_score_or_error(self):
        with self.assertRaises(ValueError):
            Trial({"a": 1})
