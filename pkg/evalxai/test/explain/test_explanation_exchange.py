import json
from unittest import TestCase

import numpy
from hypothesis import given, settings
from hypothesis.strategies import booleans, floats, integers, lists, sampled_from, text

from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_spec import FeatureSpec
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.explanation_exchange import ExplanationExchange, export_explanations, import_explanations
from evalxai.src.explain.rule import Orientation, PredictedClass, Rule

FEATURES = ["nCommit", "AddedLOC", "nCoupledClass", "LOC", "CommentToCodeRatio"]


def _schema() -> Dataset:
    rows = numpy.array([[0.615385, 246.0, 39.0, 11.0, 0.33], [0.1, 3.0, 2.0, 8.0, 0.5]])
    return Dataset([FeatureSpec(name) for name in FEATURES], rows, numpy.array([1, 0]))


def _fig_3b_document():
    return {
        "version": 1,
        "explanations": [
            {
                "instance_id": "0",
                "predicted_class": "positive",
                "risk_score": 0.77,
                "explainer_id": "pyexplainer",
                "run_seed": 1,
                "rules": [
                    {"feature": "nCommit", "op": "gt", "threshold": 0.62},
                    {"feature": "LOC", "op": "gt", "threshold": 11.0},
                ],
            }
        ],
    }


class TestExplanationExchange(TestCase):
    TEST_DEADLINE = 5000

    def setUp(self) -> None:
        self._exchange = ExplanationExchange()

    def test_imports_reference_explanation(self):
        (explanation,) = import_explanations(_fig_3b_document(), _schema())
        expected = Explanation(
            "0",
            PredictedClass.POSITIVE,
            0.77,
            [Rule("nCommit", Orientation.MORE_THAN, 0.62), Rule("LOC", Orientation.MORE_THAN, 11.0)],
            "pyexplainer",
            1,
        )
        self.assertEqual(expected, explanation)

    def test_reexport_is_byte_identical(self):
        explanations = [
            Explanation("0", PredictedClass.POSITIVE, 0.77, [Rule("LOC", Orientation.MORE_THAN, 11.0)], "a", 1),
            Explanation("1", PredictedClass.NEGATIVE, 0.1, [], "a", 1),
            Explanation("2", PredictedClass.NEGATIVE, 0.3, [Rule("nCommit", Orientation.LESS_THAN, 0.1)], "a", 2),
        ]
        text_form = self._exchange.dumps(explanations)
        self.assertEqual(text_form, self._exchange.dumps(self._exchange.loads(text_form, _schema())))

    def test_unknown_feature(self):
        document = _fig_3b_document()
        document["explanations"][0]["rules"][0]["feature"] = "foo"
        with self.assertRaises(ValueError) as context:
            import_explanations(document, _schema())
        self.assertIn("foo", str(context.exception))

    def test_unknown_orientation(self):
        document = _fig_3b_document()
        document["explanations"][0]["rules"][0]["op"] = "ge"
        with self.assertRaises(ValueError):
            import_explanations(document, _schema())

    def test_duplicate_feature(self):
        document = _fig_3b_document()
        document["explanations"][0]["rules"][1]["feature"] = "nCommit"
        with self.assertRaises(ValueError):
            import_explanations(document, _schema())

    def test_wrong_version(self):
        document = _fig_3b_document()
        document["version"] = 2
        with self.assertRaises(ValueError):
            import_explanations(document, _schema())

    def test_missing_key(self):
        document = _fig_3b_document()
        del document["explanations"][0]["run_seed"]
        with self.assertRaises(ValueError) as context:
            import_explanations(document, _schema())
        self.assertIn("run_seed", str(context.exception))

    def test_text_rules(self):
        document = _fig_3b_document()
        document["explanations"][0]["rules"] = [{"text": "AddedLOC > 95.00"}, {"text": "2.00 < LOC <= 12.00"}]
        (explanation,) = import_explanations(document, _schema())
        # LOC is 11.0 for row 0, nearer the upper bound
        self.assertEqual(
            [Rule("AddedLOC", Orientation.MORE_THAN, 95.0), Rule("LOC", Orientation.LESS_THAN, 12.0)],
            explanation.rules,
        )
        exported = export_explanations([explanation])
        self.assertEqual({"feature": "LOC", "op": "lt", "threshold": 12.0}, exported["explanations"][0]["rules"][1])

    def test_text_rule_needs_known_instance(self):
        document = _fig_3b_document()
        document["explanations"][0]["instance_id"] = "9"
        document["explanations"][0]["rules"] = [{"text": "LOC > 3"}]
        with self.assertRaises(ValueError):
            import_explanations(document, _schema())

    def test_invalid_json(self):
        with self.assertRaises(ValueError):
            self._exchange.loads("[1, 2", _schema())

    @given(
        entries=lists(
            lists(
                sampled_from(FEATURES).flatmap(
                    lambda feature: booleans().flatmap(
                        lambda more: floats(allow_nan=False, allow_infinity=False).map(
                            lambda threshold: Rule(
                                feature, Orientation.MORE_THAN if more else Orientation.LESS_THAN, threshold
                            )
                        )
                    )
                ),
                max_size=5,
                unique_by=lambda rule: rule.feature,
            ),
            max_size=6,
        ),
        risk=floats(min_value=0.0, max_value=1.0),
        seed=integers(min_value=0, max_value=2**63),
        explainer_id=text(max_size=10),
    )
    @settings(deadline=TEST_DEADLINE, max_examples=1000)
    def test_round_trip_identity(self, entries, risk, seed, explainer_id):
        explanations = [
            Explanation(str(index), PredictedClass.from_risk(risk), risk, rules, explainer_id, seed + index)
            for index, rules in enumerate(entries)
        ]
        document = json.loads(json.dumps(export_explanations(explanations)))
        self.assertEqual(explanations, import_explanations(document, _schema()))
