import os
import tempfile
from unittest import TestCase
from unittest.mock import create_autospec

import numpy

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.synthetic_dataset_generator import generate_synthetic
from evalxai.src.models.decision_tree_trainer import DecisionTreeTrainer
from evalxai.src.models.logistic_regression_trainer import LogisticRegressionTrainer
from evalxai.src.models.model_serializer import ModelSerializer
from evalxai.src.models.random_forest_trainer import RandomForestTrainer


class TestModelSerializer(TestCase):
    def setUp(self) -> None:
        self._dataset = generate_synthetic(120, [1.0, -0.5, 0.25], 0.1, 0.1, 17)
        self._points = numpy.random.default_rng(2).standard_normal((200, 3))
        self._serializer = ModelSerializer()

    def _assert_restores(self, model):
        restored = self._serializer.loads(self._serializer.dumps(model))
        self.assertEqual(model.kind, restored.kind)
        self.assertEqual(model.feature_names, restored.feature_names)
        self.assertEqual(model.params, restored.params)
        self.assertTrue(numpy.array_equal(model.risks(self._points), restored.risks(self._points)))

    def test_logistic_regression(self):
        self._assert_restores(LogisticRegressionTrainer().train(self._dataset, 0))

    def test_decision_tree(self):
        self._assert_restores(DecisionTreeTrainer().train(self._dataset, 0))

    def test_random_forest(self):
        self._assert_restores(RandomForestTrainer(n_estimators=5).train(self._dataset, 6))

    def test_document_is_versioned(self):
        document = self._serializer.to_document(LogisticRegressionTrainer().train(self._dataset, 0))
        self.assertEqual(1, document["version"])
        self.assertEqual("logistic_regression", document["kind"])

    def test_save_and_load(self):
        model = DecisionTreeTrainer(max_depth=3).train(self._dataset, 0)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "tree.json")
            self._serializer.save(model, path)
            restored = self._serializer.load(path)
        self.assertTrue(numpy.array_equal(model.risks(self._points), restored.risks(self._points)))

    def test_unknown_version(self):
        with self.assertRaises(ValueError):
            self._serializer.from_document({"version": 2, "kind": "decision_tree"})

    def test_missing_field(self):
        with self.assertRaises(ValueError):
            self._serializer.from_document({"version": 1, "kind": "logistic_regression", "feature_names": ["a"]})

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            self._serializer.from_document({"version": 1, "kind": "svm", "feature_names": [], "params": {}})

    def test_unsupported_model(self):
        model = create_autospec(IProbabilityModel)
        with self.assertRaises(TypeError):
            self._serializer.to_document(model)

    def test_invalid_json(self):
        with self.assertRaises(ValueError):
            self._serializer.loads("{not json")
