import os
import shutil
import tempfile
from unittest import TestCase

from evalxai.src.errors import DatasetError
from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.harness.experiment_config import ExperimentConfig
from evalxai.src.harness.experiment_runner import run_experiment
from evalxai.src.harness.outcome_dump import (
    OUTCOME_COLUMNS,
    outcome_rows,
    read_outcomes,
    simulated_instance_rows,
    write_outcomes,
    write_table,
)
from evalxai.test.harness.small_experiment import oracle_document


class TestOutcomeDump(TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls._artifacts = run_experiment(ExperimentConfig.from_dict(oracle_document(runs=2, instance_cap=6)))

    def setUp(self) -> None:
        self._directory = tempfile.mkdtemp()

    def tearDown(self) -> None:
        shutil.rmtree(self._directory)

    def test_rows(self):
        rows = outcome_rows(self._artifacts)
        self.assertEqual(3 * 2 * 6, len(rows))
        self.assertEqual(OUTCOME_COLUMNS, list(rows[0]))
        self.assertEqual(("lr", 1.0, 1), (rows[0]["model"], rows[0]["alpha"], rows[0]["run"]))

        columns, simulated = simulated_instance_rows(self._artifacts)
        self.assertEqual(["model", "alpha", "run", "instance_id", "variant", "f1", "f2", "f3", "risk"], columns)
        self.assertEqual(3 * len(rows), len(simulated))
        self.assertEqual(rows[0]["original_risk"], simulated[0]["risk"])
        self.assertEqual(rows[0]["green_risk"], simulated[1]["risk"])
        self.assertEqual(rows[0]["red_risk"], simulated[2]["risk"])

    def test_outcomes_survive_a_dump(self):
        path = os.path.join(self._directory, "outcomes.csv")
        write_outcomes(self._artifacts, path)
        table = read_outcomes([path])
        model = self._artifacts.models[0]
        self.assertEqual(sorted(model.simulated), sorted(table["lr"]))
        for alpha, run in model.simulated:
            self.assertEqual(model.outcomes(alpha, run), table["lr"][(alpha, run)])

    def test_runs_of_separate_files_are_renumbered(self):
        first = os.path.join(self._directory, "outcomes_a.csv")
        second = os.path.join(self._directory, "outcomes_b.csv")
        write_outcomes(self._artifacts, first)
        write_outcomes(self._artifacts, second)
        table = read_outcomes([first, second])
        self.assertEqual({1, 2, 3, 4}, {run for _, run in table["lr"]})
        model = self._artifacts.models[0]
        self.assertEqual(model.outcomes(2.0, 1), table["lr"][(2.0, 3)])
        self.assertEqual(model.outcomes(2.0, 2), table["lr"][(2.0, 4)])

    def test_failed_and_clamped_outcomes(self):
        outcomes = [
            InstanceOutcome("3", 1, 0.8, None, None, explanation_failed=True),
            InstanceOutcome("9", 0, 0.2, 0.1, 0.4, clamped=("LOC", "nCommit")),
        ]
        rows = [
            {
                "model": "dt",
                "alpha": 1.0,
                "run": 1,
                "instance_id": outcome.instance_id,
                "true_label": outcome.true_label,
                "original_risk": outcome.original_risk,
                "green_risk": outcome.green_risk,
                "red_risk": outcome.red_risk,
                "explanation_failed": outcome.explanation_failed,
                "clamped": ";".join(outcome.clamped),
            }
            for outcome in outcomes
        ]
        path = os.path.join(self._directory, "outcomes.csv")
        write_table(path, OUTCOME_COLUMNS, rows)
        self.assertEqual(outcomes, read_outcomes([path])["dt"][(1.0, 1)])

    def test_bad_dumps(self):
        missing_column = os.path.join(self._directory, "missing.csv")
        with open(missing_column, "w", encoding="utf-8") as handle:
            handle.write("model,alpha,run\nlr,1.0,1\n")
        with self.assertRaises(DatasetError):
            read_outcomes([missing_column])
        with self.assertRaises(DatasetError):
            read_outcomes([os.path.join(self._directory, "absent.csv")])
        bad_risk = os.path.join(self._directory, "bad.csv")
        with open(bad_risk, "w", encoding="utf-8") as handle:
            handle.write(",".join(OUTCOME_COLUMNS) + "\n")
            handle.write("lr,1.0,1,0,1,1.7,0.5,0.9,False,\n")
        with self.assertRaises(DatasetError):
            read_outcomes([bad_risk])
