import logging
from typing import Any, Dict, List, Sequence, Tuple

import pandas

from evalxai.src.errors import DatasetError
from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.harness.run_artifacts import RunArtifacts

logger = logging.getLogger(__name__)

OUTCOME_COLUMNS = [
    "model",
    "alpha",
    "run",
    "instance_id",
    "true_label",
    "original_risk",
    "green_risk",
    "red_risk",
    "explanation_failed",
    "clamped",
]
VARIANTS = ("original", "green", "red")

# model -> (alpha, run) -> outcomes in dump order
OutcomeTable = Dict[str, Dict[Tuple[float, int], List[InstanceOutcome]]]


def outcome_rows(artifacts: RunArtifacts) -> List[Dict[str, Any]]:
    rows = []
    for model in artifacts.models:
        for (alpha, run), simulated in model.simulated.items():
            for entry in simulated:
                outcome = entry.outcome
                rows.append(
                    {
                        "model": model.name,
                        "alpha": alpha,
                        "run": run,
                        "instance_id": outcome.instance_id,
                        "true_label": outcome.true_label,
                        "original_risk": outcome.original_risk,
                        "green_risk": outcome.green_risk,
                        "red_risk": outcome.red_risk,
                        "explanation_failed": outcome.explanation_failed,
                        "clamped": ";".join(outcome.clamped),
                    }
                )
    return rows


def simulated_instance_rows(artifacts: RunArtifacts) -> Tuple[List[str], List[Dict[str, Any]]]:
    """

    the rows the model saw for every outcome: the original and, unless the explanation failed, both variants
    :return: the column names and the rows
             <Tuple[List[str], List[Dict[str, Any]]]>
    """
    feature_names = artifacts.feature_names
    columns = ["model", "alpha", "run", "instance_id", "variant"] + feature_names + ["risk"]
    rows = []
    for model in artifacts.models:
        for (alpha, run), simulated in model.simulated.items():
            for entry in simulated:
                outcome = entry.outcome
                variants = zip(
                    VARIANTS,
                    (entry.original, entry.green, entry.red),
                    (outcome.original_risk, outcome.green_risk, outcome.red_risk),
                )
                for variant, values, risk in variants:
                    if values is None:
                        continue
                    row: Dict[str, Any] = {
                        "model": model.name,
                        "alpha": alpha,
                        "run": run,
                        "instance_id": outcome.instance_id,
                        "variant": variant,
                    }
                    row.update({name: float(value) for name, value in zip(feature_names, values)})
                    row["risk"] = risk
                    rows.append(row)
    return columns, rows


def write_table(path: str, columns: Sequence[str], rows: List[Dict[str, Any]]):
    pandas.DataFrame(rows, columns=list(columns)).to_csv(path, index=False, lineterminator="\n")


def write_outcomes(artifacts: RunArtifacts, path: str):
    write_table(path, OUTCOME_COLUMNS, outcome_rows(artifacts))


def write_simulated_instances(artifacts: RunArtifacts, path: str):
    columns, rows = simulated_instance_rows(artifacts)
    write_table(path, columns, rows)


def read_outcomes(paths: Sequence[str]) -> OutcomeTable:
    """

    reads outcome dumps. runs are renumbered per model in order of first appearance across the files, so
    dumps of separate executions that each call their run 1 become distinct runs
    :return: outcomes per model and (alpha, run)
             <OutcomeTable>
    """
    table: OutcomeTable = {}
    run_numbers: Dict[str, Dict[Tuple[int, int], int]] = {}
    for file_index, path in enumerate(paths):
        try:
            frame = pandas.read_csv(
                path,
                dtype={"model": str, "instance_id": str, "clamped": str},
                keep_default_na=False,
                na_values={"green_risk": [""], "red_risk": [""]},
                float_precision="round_trip",
            )
        except (OSError, pandas.errors.ParserError, pandas.errors.EmptyDataError) as error:
            raise DatasetError(f"can not read outcomes {path}: {error}") from error
        missing = [column for column in OUTCOME_COLUMNS if column not in frame.columns]
        if missing:
            raise DatasetError(f"outcomes {path} lacks columns {missing}")
        try:
            for record in frame.to_dict("records"):
                model = record["model"]
                numbers = run_numbers.setdefault(model, {})
                run = numbers.setdefault((file_index, int(record["run"])), len(numbers) + 1)
                failed = str(record["explanation_failed"]) == "True"
                outcome = InstanceOutcome(
                    record["instance_id"],
                    int(record["true_label"]),
                    float(record["original_risk"]),
                    None if failed else float(record["green_risk"]),
                    None if failed else float(record["red_risk"]),
                    explanation_failed=failed,
                    clamped=tuple(name for name in record["clamped"].split(";") if name),
                )
                table.setdefault(model, {}).setdefault((float(record["alpha"]), run), []).append(outcome)
        except (TypeError, ValueError) as error:
            raise DatasetError(f"malformed outcomes in {path}: {error}") from error
        logger.info("read %d outcomes from %s", len(frame), path)
    return table
