from unittest import TestCase
from unittest.mock import create_autospec, patch

import numpy
from hypothesis import given, settings
from hypothesis.strategies import booleans, floats

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.explain.rule import Orientation, PredictedClass, Rule
from evalxai.src.explain.surrogate_explainer import (
    SurrogateConfig,
    SurrogateExplainer,
    surrogate_explain,
    weighted_ridge,
)
from evalxai.src.models.logistic_regression_model import LogisticRegressionModel


def _background(columns) -> Dataset:
    rows = numpy.column_stack(columns)
    features = [FeatureSpec(f"f{index + 1}") for index in range(rows.shape[1])]
    return Dataset(features, rows, numpy.zeros(rows.shape[0], dtype=int))


class TestSurrogateExplainer(TestCase):
    def setUp(self) -> None:
        self._rng = numpy.random.default_rng(0)
        self._background = _background([self._rng.standard_normal(400)])

    def test_constant_model_fails_to_explain(self):
        model = create_autospec(IProbabilityModel)
        model.risk.return_value = 0.7
        model.risks.side_effect = lambda rows: numpy.full(rows.shape[0], 0.7)
        explanation = surrogate_explain(model, numpy.array([0.3]), self._background, SurrogateConfig(), seed=1)
        self.assertTrue(explanation.failed)
        self.assertIs(PredictedClass.POSITIVE, explanation.predicted_class)
        self.assertEqual(0.7, explanation.risk_score)

    def test_top_quartile_positive_instance(self):
        model = LogisticRegressionModel(["f1"], [2.0], 0.0, {})
        instance = numpy.array([1.5])
        explanation = surrogate_explain(model, instance, self._background, SurrogateConfig(), seed=3)
        third_quartile = numpy.quantile(self._background.rows[:, 0], 0.75)
        self.assertEqual([Rule("f1", Orientation.MORE_THAN, third_quartile)], explanation.rules)

    def test_bottom_quartile_negative_instance(self):
        model = LogisticRegressionModel(["f1"], [2.0], 0.0, {})
        explanation = surrogate_explain(model, numpy.array([-1.5]), self._background, SurrogateConfig(), seed=3)
        first_quartile = numpy.quantile(self._background.rows[:, 0], 0.25)
        self.assertIs(PredictedClass.NEGATIVE, explanation.predicted_class)
        self.assertEqual([Rule("f1", Orientation.LESS_THAN, first_quartile)], explanation.rules)

    def test_same_seed_same_explanation(self):
        background = _background([self._rng.standard_normal(300) for _ in range(4)])
        model = LogisticRegressionModel(["f1", "f2", "f3", "f4"], [1.0, -0.5, 0.2, 0.0], 0.1, {})
        explainer = SurrogateExplainer(background, SurrogateConfig(num_samples=500, top_k=2))
        instance = background.rows[5]
        first = explainer.explain(model, instance, "5", 11)
        second = explainer.explain(model, instance, "5", 11)
        self.assertEqual(first, second)
        self.assertEqual(11, first.run_seed)
        self.assertLessEqual(len(first.rules), 2)

    def test_constant_feature_never_ruled(self):
        background = _background([numpy.full(200, 3.0), self._rng.standard_normal(200)])
        model = LogisticRegressionModel(["f1", "f2"], [5.0, 1.0], -15.0, {})
        explainer = SurrogateExplainer(background, SurrogateConfig(top_k=2))
        self.assertEqual(["f2"], explainer.candidate_features)
        explanation = explainer.explain(model, numpy.array([3.0, 1.2]), "0", 0)
        self.assertNotIn("f1", explanation.ruled_features())

    def test_interior_boundaries(self):
        background = _background([numpy.arange(9.0)])
        explainer = SurrogateExplainer(background)
        self.assertEqual([2.0, 4.0, 6.0], explainer.boundaries("f1").tolist())

    def test_rule_thresholds_are_bin_boundaries(self):
        background = _background([self._rng.standard_normal(300), self._rng.uniform(0, 10, 300)])
        model = LogisticRegressionModel(["f1", "f2"], [1.0, 0.4], -2.0, {})
        explainer = SurrogateExplainer(background, SurrogateConfig(top_k=2))
        for row in background.rows[:10]:
            for rule in explainer.explain(model, row, "0", 2).rules:
                self.assertIn(rule.threshold, explainer.boundaries(rule.feature).tolist())

    def test_weighted_ridge_recovers_slope(self):
        design = numpy.array([[0.0], [1.0], [0.0], [1.0]])
        target = numpy.array([1.0, 3.0, 1.0, 3.0])
        coefficients = weighted_ridge(design, target, numpy.ones(4), 0.0)
        self.assertAlmostEqual(2.0, coefficients[0])

    def test_config_validation(self):
        with self.assertRaises(ValueError):
            SurrogateConfig(num_samples=20, top_k=3)
        with self.assertRaises(ValueError):
            SurrogateConfig(quantile_bins=1)
        with self.assertRaises(ValueError):
            SurrogateConfig(kernel_width=0.0)
        with self.assertRaises(ValueError):
            SurrogateConfig.from_dict({"samples": 10})

    def test_config_from_dict(self):
        config = SurrogateConfig.from_dict({"num_samples": 200, "quantile_bins": 5})
        self.assertEqual(200, config.num_samples)
        self.assertEqual(5, config.quantile_bins)
        self.assertIsNone(config.kernel_width)


class TestSurrogateInnerBins(TestCase):
    TEST_DEADLINE = 2000
    RIDGE = "evalxai.src.explain.surrogate_explainer.weighted_ridge"

    def setUp(self) -> None:
        self._explainer = SurrogateExplainer(_background([numpy.linspace(0.0, 100.0, 101)]))

    def _explain(self, intercept: float, coefficient: float, value: float):
        model = LogisticRegressionModel(["f1"], [0.1], intercept, {})
        with patch(self.RIDGE, return_value=numpy.array([coefficient])):
            return self._explainer.explain(model, numpy.array([value]), "0", 0)

    def test_boundaries(self):
        self.assertEqual([25.0, 50.0, 75.0], self._explainer.boundaries("f1").tolist())

    def test_negative_prediction(self):
        against = self._explain(-6.0, 0.3, 40.0)
        self.assertIs(PredictedClass.NEGATIVE, against.predicted_class)
        self.assertEqual([Rule("f1", Orientation.LESS_THAN, 50.0)], against.rules)
        towards = self._explain(-6.0, -0.3, 40.0)
        self.assertEqual([Rule("f1", Orientation.MORE_THAN, 25.0)], towards.rules)

    def test_positive_prediction(self):
        towards = self._explain(-3.0, 0.3, 40.0)
        self.assertIs(PredictedClass.POSITIVE, towards.predicted_class)
        self.assertEqual([Rule("f1", Orientation.MORE_THAN, 25.0)], towards.rules)
        against = self._explain(-3.0, -0.3, 40.0)
        self.assertEqual([Rule("f1", Orientation.LESS_THAN, 50.0)], against.rules)

    def test_upper_inner_bin(self):
        self.assertEqual([Rule("f1", Orientation.LESS_THAN, 75.0)], self._explain(-8.0, 0.3, 60.0).rules)
        self.assertEqual([Rule("f1", Orientation.MORE_THAN, 50.0)], self._explain(-8.0, -0.3, 60.0).rules)

    @given(
        value=floats(min_value=25.5, max_value=74.5).filter(lambda value: value != 50.0),
        positive_coefficient=booleans(),
        intercept=floats(min_value=-10.0, max_value=10.0),
    )
    @settings(deadline=TEST_DEADLINE)
    def test_inner_bin_rule_holds_for_the_instance(self, value, positive_coefficient, intercept):
        explanation = self._explain(intercept, 0.3 if positive_coefficient else -0.3, value)
        (rule,) = explanation.rules
        self.assertTrue(rule.is_satisfied_by(value))
        self.assertLess(abs(rule.threshold - value), 25.0)
