import json
import os
import tempfile
from unittest import TestCase
from unittest.mock import create_autospec

import pandas
from PIL import Image  # type: ignore

from evalxai.src.explain.explanation_exchange import ExplanationExchange
from evalxai.src.harness.experiment_config import ExperimentConfig
from evalxai.src.harness.experiment_runner import ExperimentRunner, run_experiment
from evalxai.src.harness.plot_renderer import PlotRenderer
from evalxai.src.harness.report_writer import ReportWriter, emit_plot_series, emit_reports
from evalxai.src.models.model_serializer import ModelSerializer
from evalxai.test.harness.small_experiment import oracle_document, surrogate_document


def _read_tree(directory: str):
    contents = {}
    for root, _, names in os.walk(directory):
        for name in names:
            path = os.path.join(root, name)
            with open(path, "rb") as handle:
                contents[os.path.relpath(path, directory)] = handle.read()
    return contents


class TestReportWriter(TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls._artifacts = run_experiment(ExperimentConfig.from_dict(oracle_document(runs=2, instance_cap=10)))

    def test_file_set(self):
        with tempfile.TemporaryDirectory() as directory:
            written = ReportWriter().write(self._artifacts, directory)
            expected = {
                "model_scores.json",
                "model_scores.csv",
                "metrics.json",
                "metrics.csv",
                "consistency.json",
                "consistency.csv",
                "stability.json",
                "plot_series.json",
                os.path.join("models", "lr.json"),
                os.path.join("explanations", "lr_run1.json"),
                os.path.join("explanations", "lr_run2.json"),
                "outcomes.csv",
                "simulated_instances.csv",
            }
            self.assertEqual(expected, set(written))
            self.assertEqual(expected, set(_read_tree(directory)))

    def test_documents(self):
        with tempfile.TemporaryDirectory() as directory:
            emit_reports(self._artifacts, directory)
            with open(os.path.join(directory, "model_scores.json"), "r", encoding="utf-8") as handle:
                scores = json.load(handle)
            with open(os.path.join(directory, "consistency.json"), "r", encoding="utf-8") as handle:
                consistency = json.load(handle)
            with open(os.path.join(directory, "metrics.json"), "r", encoding="utf-8") as handle:
                metrics = json.load(handle)
            model = ModelSerializer().load(os.path.join(directory, "models", "lr.json"))
            explanations = ExplanationExchange().load(
                os.path.join(directory, "explanations", "lr_run1.json"), self._artifacts.instances
            )
            outcomes = pandas.read_csv(os.path.join(directory, "outcomes.csv"))
            simulated = pandas.read_csv(os.path.join(directory, "simulated_instances.csv"))

        self.assertEqual(0.75, scores["auc_gate"])
        self.assertEqual("lr", scores["models"][0]["model"])
        self.assertEqual("logistic_regression", scores["models"][0]["kind"])
        self.assertFalse(scores["models"][0]["below_auc_gate"])
        self.assertEqual({"inconsistent_count": 0, "total": 3, "percentage": 0.0}, consistency["aggregate"])
        self.assertEqual(0.05, consistency["significance"])
        self.assertEqual(6, len(metrics))
        self.assertEqual(self._artifacts.models[0].model.feature_names, model.feature_names)
        self.assertEqual(10, len(explanations))
        self.assertEqual(2 * 3 * 10, len(outcomes))
        self.assertEqual(3 * len(outcomes), len(simulated))
        self.assertEqual(["original", "green", "red"], simulated["variant"].tolist()[:3])

    def test_byte_identical_across_jobs(self):
        config = ExperimentConfig.from_dict(surrogate_document())
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            ReportWriter().write(ExperimentRunner(jobs=1).run(config), first)
            ReportWriter().write(ExperimentRunner(jobs=3).run(config), second)
            self.assertEqual(_read_tree(first), _read_tree(second))

    def test_formats(self):
        with tempfile.TemporaryDirectory() as directory:
            written = ReportWriter(formats=("csv",)).write_reports(self._artifacts, directory)
        self.assertEqual(["model_scores.csv", "metrics.csv", "consistency.csv", "stability.json"], written)
        with self.assertRaises(ValueError):
            ReportWriter(formats=("xml",))
        with self.assertRaises(ValueError):
            ReportWriter(formats=())

    def test_plots_only_on_request(self):
        renderer = create_autospec(PlotRenderer)
        renderer.render_lines.return_value = Image.new("RGB", (4, 4))
        renderer.render_boxplots.return_value = Image.new("RGB", (4, 4))
        with tempfile.TemporaryDirectory() as directory:
            ReportWriter(plot_renderer=renderer).write(self._artifacts, directory)
            self.assertFalse(os.path.exists(os.path.join(directory, "plots")))
        renderer.render_lines.assert_not_called()

        document = oracle_document(runs=1, instance_cap=4, render_plots=True)
        artifacts = run_experiment(ExperimentConfig.from_dict(document))
        with tempfile.TemporaryDirectory() as directory:
            written = ReportWriter(plot_renderer=renderer).write(artifacts, directory)
            plots = sorted(name for name in written if name.startswith("plots"))
            self.assertEqual(6, len(plots))
            for name in plots:
                self.assertTrue(os.path.isfile(os.path.join(directory, name)))
        self.assertEqual(5, renderer.render_lines.call_count)
        renderer.render_boxplots.assert_called_once()

    def test_emit_plot_series(self):
        with tempfile.TemporaryDirectory() as directory:
            path = emit_plot_series(self._artifacts, os.path.join(directory, "series"))
            with open(path, "r", encoding="utf-8") as handle:
                series = json.load(handle)
        self.assertEqual([1.0, 2.0, 3.0], series["alphas"])
