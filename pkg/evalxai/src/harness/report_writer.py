import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

from evalxai.interface.harness.i_report_writer import IReportWriter
from evalxai.src.evalmetrics.consistency_checker import CSV_COLUMNS as CONSISTENCY_COLUMNS
from evalxai.src.evalmetrics.consistency_checker import ConsistencyReport, aggregate_consistency
from evalxai.src.evalmetrics.metric_report import CSV_COLUMNS as METRIC_COLUMNS
from evalxai.src.explain.explanation_exchange import ExplanationExchange
from evalxai.src.harness.outcome_dump import write_outcomes, write_simulated_instances, write_table
from evalxai.src.harness.plot_renderer import PlotRenderer
from evalxai.src.harness.plot_series import PlotSeriesBuilder
from evalxai.src.harness.run_artifacts import AUC_GATE, RunArtifacts
from evalxai.src.models.model_serializer import ModelSerializer

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")
MODEL_SCORE_COLUMNS = ["model", "kind", "Acc", "F-1", "AUC", "below_auc_gate"]


def dump_json(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def model_scores_document(artifacts: RunArtifacts) -> List[Dict[str, Any]]:
    return [
        {
            "model": model.name,
            "kind": model.model.kind,
            "params": model.model.params,
            "score": model.score.to_dict(),
            "below_auc_gate": model.below_auc_gate,
            "cv_score": None if model.cv_score is None else model.cv_score.to_dict(),
            "search": None if model.search is None else model.search.to_dict(),
            "explanation_failures": model.failure_count,
            "clamp_count": model.clamp_count,
            "all_explanations_failed": model.all_explanations_failed,
        }
        for model in artifacts.models
    ]


def consistency_document(reports: Sequence[ConsistencyReport], significance: Optional[float] = None) -> Dict[str, Any]:
    if significance is None and reports:
        significance = reports[0].significance
    return {
        "significance": significance,
        "aggregate": aggregate_consistency(reports),
        "reports": [report.to_dict() for report in reports],
    }


class ReportWriter(IReportWriter):
    """
    writes every report of an experiment below one directory. file contents depend only on the artifacts,
    writing the same artifacts twice gives identical bytes

    model_scores, metrics and consistency come as json and csv (or as the requested formats); stability,
    plot series, models and explanations as json; outcomes and simulated instances as csv. pngs of the plot
    series are only drawn when the artifacts ask for them.
    """

    def __init__(
        self,
        formats: Sequence[str] = FORMATS,
        serializer: Optional[ModelSerializer] = None,
        exchange: Optional[ExplanationExchange] = None,
        plot_series_builder: Optional[PlotSeriesBuilder] = None,
        plot_renderer: Optional[PlotRenderer] = None,
    ):
        unknown = sorted(set(formats) - set(FORMATS))
        if unknown or not formats:
            raise ValueError(f"formats must be taken from {list(FORMATS)}, got {list(formats)}")
        if serializer is None:
            serializer = ModelSerializer()
        if exchange is None:
            exchange = ExplanationExchange()
        if plot_series_builder is None:
            plot_series_builder = PlotSeriesBuilder()
        if plot_renderer is None:
            plot_renderer = PlotRenderer()
        self._formats = tuple(formats)
        self._serializer = serializer
        self._exchange = exchange
        self._plot_series_builder = plot_series_builder
        self._plot_renderer = plot_renderer

    def write(self, artifacts: RunArtifacts, directory: str) -> List[str]:
        os.makedirs(os.path.join(directory, "models"), exist_ok=True)
        os.makedirs(os.path.join(directory, "explanations"), exist_ok=True)
        written = self.write_reports(artifacts, directory)

        for model in artifacts.models:
            name = os.path.join("models", f"{model.name}.json")
            write_text(os.path.join(directory, name), self._serializer.dumps(model.model))
            written.append(name)
            for run, explanations in enumerate(model.explanations, start=1):
                name = os.path.join("explanations", f"{model.name}_run{run}.json")
                ordered = [explanations[key] for key in sorted(explanations, key=_instance_order)]
                write_text(os.path.join(directory, name), self._exchange.dumps(ordered))
                written.append(name)

        write_outcomes(artifacts, os.path.join(directory, "outcomes.csv"))
        write_simulated_instances(artifacts, os.path.join(directory, "simulated_instances.csv"))
        written.extend(["outcomes.csv", "simulated_instances.csv"])

        series = self._plot_series_builder.build(artifacts)
        write_text(os.path.join(directory, "plot_series.json"), dump_json(series))
        written.append("plot_series.json")
        if artifacts.render_plots:
            written.extend(self._render(series, artifacts, directory))
        logger.info("wrote %d report files to %s", len(written), directory)
        return written

    def write_reports(self, artifacts: RunArtifacts, directory: str) -> List[str]:
        """the summary reports alone: model scores, metrics, consistency and stability"""
        os.makedirs(directory, exist_ok=True)
        written = []
        if "json" in self._formats:
            documents = {
                "model_scores.json": {"auc_gate": AUC_GATE, "models": model_scores_document(artifacts)},
                "metrics.json": [report.to_dict() for report in artifacts.reports],
                "consistency.json": consistency_document(artifacts.consistency_reports),
            }
            for name, document in documents.items():
                write_text(os.path.join(directory, name), dump_json(document))
                written.append(name)
        if "csv" in self._formats:
            score_rows = [
                {
                    "model": model.name,
                    "kind": model.model.kind,
                    "Acc": model.score.accuracy,
                    "F-1": model.score.f1,
                    "AUC": model.score.auc,
                    "below_auc_gate": model.below_auc_gate,
                }
                for model in artifacts.models
            ]
            write_table(os.path.join(directory, "model_scores.csv"), MODEL_SCORE_COLUMNS, score_rows)
            metric_rows = [row for report in artifacts.reports for row in report.csv_rows()]
            write_table(os.path.join(directory, "metrics.csv"), METRIC_COLUMNS, metric_rows)
            consistency_rows = [row for report in artifacts.consistency_reports for row in report.csv_rows()]
            write_table(os.path.join(directory, "consistency.csv"), CONSISTENCY_COLUMNS, consistency_rows)
            written.extend(["model_scores.csv", "metrics.csv", "consistency.csv"])
        stability = {model.name: model.stability.to_dict() for model in artifacts.models}
        write_text(os.path.join(directory, "stability.json"), dump_json(stability))
        written.append("stability.json")
        return written

    def _render(self, series: Dict[str, Any], artifacts: RunArtifacts, directory: str) -> List[str]:
        os.makedirs(os.path.join(directory, "plots"), exist_ok=True)
        written = []
        for metric, lines in series["lines"].items():
            name = os.path.join("plots", f"{metric.lstrip('%')}.png")
            self._plot_renderer.render_lines(metric, lines).save(os.path.join(directory, name), format="PNG")
            written.append(name)
        for model in artifacts.models:
            name = os.path.join("plots", f"prob_diff_{model.name}.png")
            boxes = series["boxplots"]["%Prob_diff"]
            self._plot_renderer.render_boxplots(model.name, boxes).save(os.path.join(directory, name), format="PNG")
            written.append(name)
        return written


def _instance_order(instance_id: str):
    return (0, int(instance_id), "") if instance_id.isdigit() else (1, 0, instance_id)


def emit_reports(artifacts: RunArtifacts, directory: str, formats: Sequence[str] = FORMATS) -> List[str]:
    return ReportWriter(formats).write(artifacts, directory)


def emit_plot_series(artifacts: RunArtifacts, directory: str) -> str:
    path = os.path.join(directory, "plot_series.json")
    os.makedirs(directory, exist_ok=True)
    write_text(path, dump_json(PlotSeriesBuilder().build(artifacts)))
    return path
