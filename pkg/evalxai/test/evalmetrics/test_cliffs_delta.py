from unittest import TestCase

from hypothesis import given, settings
from hypothesis.strategies import floats, lists

from evalxai.src.evalmetrics.cliffs_delta import EffectSize, cliffs_delta, magnitude


class TestCliffsDelta(TestCase):
    TEST_DEADLINE = 2000

    def test_identical_singletons(self):
        effect = cliffs_delta([0.4], [0.4])
        self.assertEqual(0.0, effect.delta)
        self.assertEqual("negligible", effect.magnitude)

    def test_disjoint(self):
        effect = cliffs_delta([5.0, 6.0, 7.0], [1.0, 2.0])
        self.assertEqual(1.0, effect.delta)
        self.assertEqual("large", effect.magnitude)

    def test_small(self):
        effect = cliffs_delta([1.0, 2.0], [1.5, 3.0])
        self.assertEqual(-0.25, effect.delta)
        self.assertEqual("small", effect.magnitude)

    def test_magnitude_boundaries(self):
        self.assertEqual("negligible", magnitude(0.1469))
        self.assertEqual("small", magnitude(0.147))
        self.assertEqual("medium", magnitude(-0.33))
        self.assertEqual("large", magnitude(0.474))

    def test_empty_sample(self):
        with self.assertRaises(ValueError):
            cliffs_delta([], [1.0])

    def test_out_of_range(self):
        with self.assertRaises(ValueError):
            EffectSize(1.5)

    @settings(deadline=TEST_DEADLINE)
    @given(
        first=lists(floats(min_value=-10, max_value=10), min_size=1, max_size=15),
        second=lists(floats(min_value=-10, max_value=10), min_size=1, max_size=15),
    )
    def test_antisymmetry(self, first, second):
        self.assertEqual(cliffs_delta(first, second).delta, -cliffs_delta(second, first).delta)
