from unittest import TestCase
from unittest.mock import create_autospec

import numpy
from hypothesis import given, settings
from hypothesis.strategies import integers, lists, tuples

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.models.model_score import ModelScore
from evalxai.src.models.model_scorer import ModelScorer, f1_score, roc_auc, score_model


def _scored(risks, labels) -> ModelScore:
    model = create_autospec(IProbabilityModel)
    model.risks.return_value = numpy.array(risks, dtype=float)
    dataset = Dataset([FeatureSpec("x")], numpy.zeros((len(labels), 1)), numpy.array(labels))
    return score_model(model, dataset)


def _brute_force_auc(labels, risks) -> float:
    wins = 0.0
    positives = [risk for risk, label in zip(risks, labels) if label == 1]
    negatives = [risk for risk, label in zip(risks, labels) if label == 0]
    for positive in positives:
        for negative in negatives:
            if positive > negative:
                wins += 1.0
            elif positive == negative:
                wins += 0.5
    return wins / (len(positives) * len(negatives))


class TestModelScorer(TestCase):
    TEST_DEADLINE = 2000

    def test_perfect_separation(self):
        self.assertEqual(ModelScore(1.0, 1.0, 1.0), _scored([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]))

    def test_all_equal_risks(self):
        self.assertEqual(0.5, _scored([0.3] * 6, [0, 1, 0, 1, 1, 0]).auc)

    def test_three_of_four_pairs(self):
        self.assertEqual(0.75, _scored([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]).auc)

    def test_single_class_auc_absent(self):
        score = _scored([0.1, 0.9], [1, 1])
        self.assertIsNone(score.auc)
        self.assertEqual(0.5, score.accuracy)

    def test_f1_without_positives(self):
        self.assertEqual(0.0, f1_score(numpy.array([0, 0]), numpy.array([0, 0])))
        self.assertEqual(0.0, _scored([0.1, 0.2, 0.3], [0, 0, 0]).f1)

    def test_f1_value(self):
        # tp 1, predicted 2, actual 2
        self.assertEqual(0.5, f1_score(numpy.array([1, 1, 0, 0]), numpy.array([1, 0, 1, 0])))

    def test_accuracy_uses_inclusive_threshold(self):
        self.assertEqual(1.0, _scored([0.5, 0.49], [1, 0]).accuracy)

    def test_model_called_once_with_rows(self):
        model = create_autospec(IProbabilityModel)
        model.risks.return_value = numpy.array([0.2, 0.7])
        dataset = Dataset([FeatureSpec("x")], numpy.array([[1.0], [2.0]]), numpy.array([0, 1]))
        ModelScorer().score(model, dataset)
        model.risks.assert_called_once()

    @given(
        pairs=lists(
            tuples(integers(min_value=0, max_value=1), integers(min_value=0, max_value=10)), min_size=2, max_size=200
        )
    )
    @settings(deadline=TEST_DEADLINE)
    def test_auc_matches_pair_counting(self, pairs):
        labels = [label for label, _ in pairs]
        risks = [value / 10.0 for _, value in pairs]
        expected = None if len(set(labels)) < 2 else _brute_force_auc(labels, risks)
        self.assertEqual(expected, roc_auc(numpy.array(labels), numpy.array(risks)))

    def test_score_range_validated(self):
        with self.assertRaises(ValueError):
            ModelScore(1.2, 0.0, None)
