import argparse
import glob
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from evalxai.src.data.csv_dataset_loader import CsvDatasetLoader
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_stats import feature_stats
from evalxai.src.errors import DatasetError, ExperimentConfigError
from evalxai.src.evalmetrics.consistency_checker import CSV_COLUMNS as CONSISTENCY_COLUMNS
from evalxai.src.evalmetrics.consistency_checker import ConsistencyChecker, ConsistencyReport, align_runs
from evalxai.src.evalmetrics.metric_report import CSV_COLUMNS as METRIC_COLUMNS
from evalxai.src.evalmetrics.metric_report import MetricReport, MetricReporter
from evalxai.src.evalmetrics.reliability_metrics import PartitionBy, prob_diff
from evalxai.src.explain.explanation import Explanation
from evalxai.src.harness.experiment_config import load_config, resolve_jobs
from evalxai.src.harness.experiment_runner import ExperimentRunner
from evalxai.src.harness.explanation_evaluator import ExplanationEvaluator, import_runs
from evalxai.src.harness.outcome_dump import OutcomeTable, read_outcomes, write_table
from evalxai.src.harness.report_writer import ReportWriter, consistency_document, dump_json, write_text
from evalxai.src.harness.run_artifacts import RunArtifacts
from evalxai.src.models.model_scorer import ModelScorer
from evalxai.src.models.model_serializer import ModelSerializer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_DATA_ERROR = 2
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class _ArgumentParser(argparse.ArgumentParser):
    """usage errors become ExperimentConfigError instead of exiting with argparse's own status"""

    def error(self, message: str):
        raise ExperimentConfigError(f"{self.prog}: {message}")


def parse_alphas(text: str) -> Tuple[float, ...]:
    try:
        alphas = tuple(float(token) for token in text.split(","))
    except ValueError as error:
        raise ExperimentConfigError(f"--alphas must be comma separated numbers, got {text!r}") from error
    if any(alpha <= 0 for alpha in alphas) or len(set(alphas)) != len(alphas):
        raise ExperimentConfigError(f"--alphas must be distinct positive numbers, got {text!r}")
    return alphas


def _emit(document: Any, out: Optional[str], name: str):
    if out is None:
        sys.stdout.write(dump_json(document))
        return
    os.makedirs(out, exist_ok=True)
    write_text(os.path.join(out, name), dump_json(document))


def _cells(table: OutcomeTable, model: str) -> List[Tuple[float, int]]:
    return sorted(table[model])


def recompute_metrics(table: OutcomeTable, partition_by: PartitionBy = PartitionBy.PREDICTED) -> List[MetricReport]:
    reporter = MetricReporter(partition_by)
    return [
        reporter.report(table[model][(alpha, run)], model, alpha, run)
        for model in table
        for alpha, run in _cells(table, model)
    ]


def recompute_consistency(table: OutcomeTable, significance: float = 0.05) -> List[ConsistencyReport]:
    checker = ConsistencyChecker(significance=significance)
    reports = []
    for model in table:
        cells = _cells(table, model)
        alphas = sorted({alpha for alpha, _ in cells})
        runs = sorted({run for _, run in cells})
        missing = [(alpha, run) for alpha in alphas for run in runs if (alpha, run) not in table[model]]
        if missing:
            raise DatasetError(f"outcomes of {model} lack (alpha, run) cells {missing}")
        if len(runs) < 2:
            raise DatasetError(f"outcomes of {model} hold {len(runs)} run, consistency needs at least 2")
        series = [{alpha: prob_diff(table[model][(alpha, run)]).as_series() for alpha in alphas} for run in runs]
        reports.append(checker.check(align_runs(series), model))
    return reports


def _check_alpha_level(alpha_level: float):
    if not 0.0 < alpha_level < 1.0:
        raise ExperimentConfigError(f"--alpha-level must lie in (0, 1), got {alpha_level}")


def _metrics(arguments: argparse.Namespace) -> int:
    reports = recompute_metrics(read_outcomes([arguments.outcomes]), PartitionBy.from_token(arguments.partition_by))
    _emit([report.to_dict() for report in reports], arguments.out, "metrics.json")
    if arguments.out is not None:
        rows = [row for report in reports for row in report.csv_rows()]
        write_table(os.path.join(arguments.out, "metrics.csv"), METRIC_COLUMNS, rows)
    return EXIT_OK


def _consistency(arguments: argparse.Namespace) -> int:
    _check_alpha_level(arguments.alpha_level)
    paths = sorted(glob.glob(os.path.join(arguments.runs, "outcomes*.csv")))
    if not paths:
        raise DatasetError(f"no outcomes*.csv files in {arguments.runs}")
    reports = recompute_consistency(read_outcomes(paths), arguments.alpha_level)
    _emit(consistency_document(reports, arguments.alpha_level), arguments.out, "consistency.json")
    if arguments.out is not None:
        rows = [row for report in reports for row in report.csv_rows()]
        write_table(os.path.join(arguments.out, "consistency.csv"), CONSISTENCY_COLUMNS, rows)
    return EXIT_OK


def explained_instances(dataset: Dataset, runs: Sequence[Dict[str, Explanation]]) -> Dataset:
    """

    the rows named by any explanation, in dataset order
    :return: subset of the dataset <Dataset>
    """
    positions = {str(row_id): position for position, row_id in enumerate(dataset.row_ids)}
    named = {instance_id for run in runs for instance_id in run}
    unknown = sorted(named - set(positions))
    if unknown:
        raise DatasetError(f"explanations name rows missing from the dataset: {unknown[:5]}")
    if not named:
        raise DatasetError("the explanation documents name no instances")
    return dataset.subset(sorted(positions[instance_id] for instance_id in named))


def _import_explanations(arguments: argparse.Namespace) -> int:
    alphas = parse_alphas(arguments.alphas)
    _check_alpha_level(arguments.alpha_level)
    loader = CsvDatasetLoader(arguments.label_column, arguments.positive_label)
    try:
        model = ModelSerializer().load(arguments.model)
    except ValueError as error:
        raise DatasetError(f"can not load model {arguments.model}: {error}") from error
    try:
        dataset = loader.load_path(arguments.dataset).select_features(model.feature_names)
        stats_dataset = dataset
        if arguments.stats_dataset is not None:
            stats_dataset = loader.load_path(arguments.stats_dataset).select_features(model.feature_names)
    except KeyError as error:
        raise DatasetError(f"the dataset lacks a feature the model uses: {error}") from error
    runs = import_runs(arguments.file, dataset)
    instances = explained_instances(dataset, runs)

    name = os.path.splitext(os.path.basename(arguments.model))[0]
    evaluator = ExplanationEvaluator(PartitionBy.from_token(arguments.partition_by), arguments.alpha_level)
    model_artifacts = evaluator.evaluate(
        name,
        model,
        ModelScorer().score(model, instances),
        instances,
        runs,
        feature_stats(stats_dataset),
        alphas,
    )
    artifacts = RunArtifacts(alphas, stats_dataset, instances, [model_artifacts])
    if arguments.out is None:
        sys.stdout.write(dump_json([report.to_dict() for report in artifacts.reports]))
    else:
        ReportWriter().write(artifacts, arguments.out)
    return EXIT_OK


def _run(arguments: argparse.Namespace) -> int:
    config = load_config(arguments.config)
    jobs = resolve_jobs(arguments.jobs, config.jobs)
    artifacts = ExperimentRunner(jobs).run(config)
    written = ReportWriter().write(artifacts, arguments.out)
    logger.info("experiment %s done, %d files in %s", arguments.config, len(written), arguments.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="evalxai", description="reliability and consistency of rule-based explanations")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="INFO")
    commands = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    commands.required = True
    partitions = [partition_by.value for partition_by in PartitionBy]

    run = commands.add_parser("run", help="train, explain, simulate and report as one experiment config says")
    run.add_argument("--config", required=True)
    run.add_argument("--out", required=True)
    run.add_argument("--jobs", type=int, default=None)
    run.set_defaults(handler=_run)

    metrics = commands.add_parser("metrics", help="recompute the metric reports of an outcome dump")
    metrics.add_argument("--outcomes", required=True)
    metrics.add_argument("--partition-by", choices=partitions, default=PartitionBy.PREDICTED.value)
    metrics.add_argument("--out", default=None)
    metrics.set_defaults(handler=_metrics)

    consistency = commands.add_parser("consistency", help="compare the runs found in outcome dumps")
    consistency.add_argument("--runs", required=True, help="directory holding outcomes*.csv files")
    consistency.add_argument("--alpha-level", type=float, default=0.05)
    consistency.add_argument("--out", default=None)
    consistency.set_defaults(handler=_consistency)

    imported = commands.add_parser("import-explanations", help="score explanations produced elsewhere")
    imported.add_argument("--file", required=True, action="append", help="exchange document, one run each")
    imported.add_argument("--dataset", required=True)
    imported.add_argument("--model", required=True, help="model document as written to models/<name>.json")
    imported.add_argument("--stats-dataset", default=None, help="dataset the simulation statistics come from")
    imported.add_argument("--label-column", default="label")
    imported.add_argument("--positive-label", default="1")
    imported.add_argument("--alphas", default="1,2,3")
    imported.add_argument("--alpha-level", type=float, default=0.05)
    imported.add_argument("--partition-by", choices=partitions, default=PartitionBy.PREDICTED.value)
    imported.add_argument("--out", default=None)
    imported.set_defaults(handler=_import_explanations)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        arguments = build_parser().parse_args(argv)
        logging.basicConfig(level=arguments.log_level, format=LOG_FORMAT)
        return arguments.handler(arguments)
    except ExperimentConfigError as error:
        sys.stderr.write(f"evalxai: configuration error: {error}\n")
        return EXIT_CONFIG_ERROR
    except (DatasetError, OSError, ValueError) as error:
        sys.stderr.write(f"evalxai: data error: {error}\n")
        return EXIT_DATA_ERROR
