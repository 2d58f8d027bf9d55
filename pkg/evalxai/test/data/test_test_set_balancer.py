from unittest import TestCase

import numpy

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.data.test_set_balancer import balance_test_set


def _dataset(n_negative: int, n_positive: int) -> Dataset:
    n_rows = n_negative + n_positive
    return Dataset(
        [FeatureSpec("x")],
        numpy.arange(n_rows, dtype=float).reshape(-1, 1),
        numpy.array([0] * n_negative + [1] * n_positive),
    )


class TestTestSetBalancer(TestCase):
    def test_java_project_counts(self):
        balanced = balance_test_set(_dataset(2191, 323), seed=0)
        self.assertEqual((323, 323), balanced.class_counts())

    def test_balanced_input_unchanged(self):
        dataset = _dataset(5, 5)
        self.assertEqual(dataset, balance_test_set(dataset, seed=3))

    def test_result_is_subset(self):
        dataset = _dataset(40, 7)
        balanced = balance_test_set(dataset, seed=8)
        self.assertTrue(set(balanced.row_ids.tolist()) <= set(dataset.row_ids.tolist()))
        for row, row_id in zip(balanced.rows[:, 0], balanced.row_ids):
            self.assertEqual(float(row_id), row)

    def test_single_class(self):
        with self.assertRaises(ValueError):
            balance_test_set(_dataset(4, 0), seed=0)
