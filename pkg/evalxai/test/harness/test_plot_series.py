from unittest import TestCase

import numpy
from hypothesis import given, settings
from hypothesis.strategies import floats, lists
from PIL import Image  # type: ignore

from evalxai.src.evalmetrics.reliability_metrics import GRANULAR_METRICS
from evalxai.src.harness.experiment_config import ExperimentConfig
from evalxai.src.harness.experiment_runner import run_experiment
from evalxai.src.harness.plot_renderer import PlotRenderer
from evalxai.src.harness.plot_series import BOX_STATISTICS, build_plot_series, five_numbers
from evalxai.test.harness.small_experiment import oracle_document


class TestPlotSeries(TestCase):
    TEST_DEADLINE = 2000

    @classmethod
    def setUpClass(cls) -> None:
        cls._artifacts = run_experiment(ExperimentConfig.from_dict(oracle_document(runs=2, instance_cap=12)))
        cls._series = build_plot_series(cls._artifacts)

    def test_lines(self):
        self.assertEqual([1.0, 2.0, 3.0], self._series["alphas"])
        self.assertEqual(["%Reversed", *GRANULAR_METRICS], list(self._series["lines"]))
        self.assertEqual(["Cort.", "Wrng."], [line["partition"] for line in self._series["lines"]["%Reversed"]])
        for metric in GRANULAR_METRICS:
            lines = self._series["lines"][metric]
            self.assertEqual(["Cort.", "Wrng.", "All"], [line["partition"] for line in lines])
            for line in lines:
                self.assertEqual("lr", line["model"])
                self.assertEqual(3, len(line["x"]))
                self.assertEqual(3, len(line["y"]))
            self.assertEqual([100.0, 100.0, 100.0], lines[2]["y"])

    def test_boxplots_follow_the_reports(self):
        boxes = self._series["boxplots"]["%Prob_diff"]
        self.assertEqual(6, len(boxes))
        model = self._artifacts.models[0]
        for box in boxes:
            report = next(r for r in model.reports if r.alpha == box["alpha"] and r.run == box["run"])
            values = report.prob_diff.values
            self.assertAlmostEqual(float(numpy.percentile(values, 25)), box["q1"])
            self.assertAlmostEqual(float(numpy.median(values)), box["median"])
            self.assertEqual(float(values.min()), box["min"])
            self.assertEqual(float(values.max()), box["max"])

    @settings(deadline=TEST_DEADLINE)
    @given(values=lists(floats(min_value=-1.0, max_value=1.0), min_size=1, max_size=50))
    def test_five_numbers_are_ordered(self, values):
        summary = five_numbers(numpy.asarray(values))
        ordered = [summary[name] for name in BOX_STATISTICS]
        self.assertEqual(sorted(ordered), ordered)
        self.assertEqual(min(values), summary["min"])
        self.assertEqual(max(values), summary["max"])

    def test_empty_series(self):
        self.assertEqual({name: None for name in BOX_STATISTICS}, five_numbers(numpy.array([])))

    def test_rendering(self):
        line_image = PlotRenderer.render_lines("PCPI", self._series["lines"]["PCPI"])
        box_image = PlotRenderer.render_boxplots("lr", self._series["boxplots"]["%Prob_diff"])
        for image in (line_image, box_image):
            self.assertIsInstance(image, Image.Image)
            self.assertGreater(image.size[0], 0)
