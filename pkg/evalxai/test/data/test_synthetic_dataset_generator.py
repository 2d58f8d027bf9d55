from unittest import TestCase

import numpy

from evalxai.src.data.synthetic_dataset_generator import generate_synthetic


class TestSyntheticDatasetGenerator(TestCase):
    def test_symmetric_labels(self):
        dataset = generate_synthetic(4000, [0.0, 0.0, 0.0], 0.0, 0.0, seed=3)
        share = dataset.labels.mean()
        # 4 standard deviations of a fair binomial share
        self.assertLess(abs(share - 0.5), 4 * 0.5 / numpy.sqrt(4000))

    def test_saturated_intercept(self):
        dataset = generate_synthetic(500, [0.1, -0.1], 20.0, 0.0, seed=1)
        self.assertTrue(numpy.all(dataset.labels == 1))

    def test_deterministic(self):
        first = generate_synthetic(100, [1.0, -2.0], 0.5, 0.1, seed=42)
        second = generate_synthetic(100, [1.0, -2.0], 0.5, 0.1, seed=42)
        self.assertEqual(first.rows.tobytes(), second.rows.tobytes())
        self.assertEqual(first.labels.tobytes(), second.labels.tobytes())

    def test_feature_names(self):
        dataset = generate_synthetic(10, [1.0, 1.0, 1.0], 0.0, 0.0, seed=0)
        self.assertEqual(["f1", "f2", "f3"], dataset.feature_names)

    def test_empty_coefficients(self):
        with self.assertRaises(ValueError):
            generate_synthetic(10, [], 0.0, 0.0, seed=0)

    def test_invalid_noise(self):
        with self.assertRaises(ValueError):
            generate_synthetic(10, [1.0], 0.0, 0.5, seed=0)

    def test_invalid_row_count(self):
        with self.assertRaises(ValueError):
            generate_synthetic(0, [1.0], 0.0, 0.0, seed=0)
