from unittest import TestCase

import numpy
from hypothesis import given, settings
from hypothesis.strategies import floats, integers, lists

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.data.feature_stats import feature_stats


def _dataset(columns):
    rows = numpy.array(columns, dtype=float).T
    features = [FeatureSpec(f"f{index}") for index in range(rows.shape[1])]
    return Dataset(features, rows, numpy.zeros(rows.shape[0], dtype=int))


class TestFeatureStats(TestCase):
    TEST_DEADLINE = 2000

    def test_constant_feature(self):
        stats = feature_stats(_dataset([[5.0, 5.0, 5.0, 5.0]]))
        self.assertEqual(0.0, stats.get("f0").std)
        self.assertEqual(5.0, stats.get("f0").mean)

    def test_hand_computed(self):
        stats = feature_stats(_dataset([[1.0, 2.0, 3.0]]))
        self.assertEqual(2.0, stats.get("f0").mean)
        self.assertEqual(1.0, stats.get("f0").std)
        self.assertEqual(1.0, stats.get("f0").minimum)
        self.assertEqual(3.0, stats.get("f0").maximum)

    def test_too_few_rows(self):
        with self.assertRaises(ValueError):
            feature_stats(_dataset([[1.0]]))

    def test_unknown_feature(self):
        stats = feature_stats(_dataset([[1.0, 2.0]]))
        with self.assertRaises(KeyError):
            stats.get("LOC")

    @given(
        values=lists(
            floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False), min_size=2, max_size=50
        ),
        width=integers(min_value=1, max_value=4),
    )
    @settings(deadline=TEST_DEADLINE)
    def test_matches_two_pass_computation(self, values, width):
        columns = [[value * (index + 1) for value in values] for index in range(width)]
        stats = feature_stats(_dataset(columns))
        self.assertEqual(width, len(stats))
        for index, column in enumerate(columns):
            mean = sum(column) / len(column)
            std = (sum((value - mean) ** 2 for value in column) / (len(column) - 1)) ** 0.5
            stat = stats.get(f"f{index}")
            self.assertLessEqual(stat.minimum, stat.mean)
            self.assertLessEqual(stat.mean, stat.maximum)
            self.assertGreaterEqual(stat.std, 0.0)
            self.assertLessEqual(abs(stat.std - std), 1e-9 * max(1.0, abs(std), abs(mean)))
