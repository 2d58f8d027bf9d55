import json
import numbers
from typing import Any, Dict, List, Optional, Sequence

import numpy

from evalxai.src.data.dataset import Dataset
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.rule import Orientation, PredictedClass, Rule
from evalxai.src.explain.rule_text_parser import RuleTextParser

DOCUMENT_VERSION = 1


class ExplanationExchange:
    """
    the json exchange document for explanations made outside this package

    {"version": 1, "explanations": [{"instance_id", "predicted_class", "risk_score", "explainer_id",
    "run_seed", "rules": [{"feature", "op", "threshold"}]}]}. on import a rule may instead be written as
    {"text": "2.00 < LOC <= 10.00"}, which is normalised against the instance's value in the schema
    dataset, looked up by row id. export always writes the structured form.
    """

    def __init__(self, parser: Optional[RuleTextParser] = None):
        if parser is None:
            parser = RuleTextParser()
        self._parser = parser

    def export_explanations(self, explanations: Sequence[Explanation]) -> Dict[str, Any]:
        return {
            "version": DOCUMENT_VERSION,
            "explanations": [
                {
                    "instance_id": explanation.instance_id,
                    "predicted_class": explanation.predicted_class.value,
                    "risk_score": explanation.risk_score,
                    "explainer_id": explanation.explainer_id,
                    "run_seed": explanation.run_seed,
                    "rules": [
                        {"feature": rule.feature, "op": rule.orientation.value, "threshold": rule.threshold}
                        for rule in explanation.rules
                    ],
                }
                for explanation in explanations
            ],
        }

    def dumps(self, explanations: Sequence[Explanation]) -> str:
        return json.dumps(self.export_explanations(explanations), indent=2) + "\n"

    def save(self, explanations: Sequence[Explanation], path: str):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(self.dumps(explanations))

    def import_explanations(self, document: Any, schema: Dataset) -> List[Explanation]:
        if not isinstance(document, dict):
            raise ValueError("explanation document must be a json object")
        if document.get("version") != DOCUMENT_VERSION:
            raise ValueError(f"unsupported explanation document version {document.get('version')!r}")
        entries = document.get("explanations")
        if not isinstance(entries, list):
            raise ValueError("explanation document needs an explanations list")
        return [self._explanation(entry, index, schema) for index, entry in enumerate(entries)]

    def loads(self, text: str, schema: Dataset) -> List[Explanation]:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as error:
            raise ValueError(f"explanation document is not valid json: {error}") from error
        return self.import_explanations(document, schema)

    def load(self, path: str, schema: Dataset) -> List[Explanation]:
        with open(path, "r", encoding="utf-8") as handle:
            return self.loads(handle.read(), schema)

    def _explanation(self, entry: Any, index: int, schema: Dataset) -> Explanation:
        if not isinstance(entry, dict):
            raise ValueError(f"explanation {index} must be a json object")
        missing = [
            key
            for key in ("instance_id", "predicted_class", "risk_score", "explainer_id", "run_seed", "rules")
            if key not in entry
        ]
        if missing:
            raise ValueError(f"explanation {index} is missing {missing}")
        instance_id = entry["instance_id"]
        if not isinstance(instance_id, str):
            raise ValueError(f"explanation {index} instance_id must be a string, got {instance_id!r}")
        risk_score = entry["risk_score"]
        if isinstance(risk_score, bool) or not isinstance(risk_score, numbers.Real):
            raise ValueError(f"explanation {index} risk_score must be a number, got {risk_score!r}")
        run_seed = entry["run_seed"]
        if isinstance(run_seed, bool) or not isinstance(run_seed, int):
            raise ValueError(f"explanation {index} run_seed must be an integer, got {run_seed!r}")
        if not isinstance(entry["explainer_id"], str):
            raise ValueError(f"explanation {index} explainer_id must be a string")
        if not isinstance(entry["rules"], list):
            raise ValueError(f"explanation {index} rules must be a list")
        rules = [self._rule(rule, instance_id, schema) for rule in entry["rules"]]
        return Explanation(
            instance_id,
            PredictedClass.from_token(entry["predicted_class"]),
            risk_score,
            rules,
            entry["explainer_id"],
            run_seed,
        )

    def _rule(self, entry: Any, instance_id: str, schema: Dataset) -> Rule:
        if not isinstance(entry, dict):
            raise ValueError(f"rule in explanation of {instance_id} must be a json object")
        if "text" in entry:
            bounds = self._parser.parse(entry["text"])
            self._check_feature(bounds.feature, schema)
            return bounds.to_rule(self._instance_value(instance_id, bounds.feature, schema))
        for key in ("feature", "op", "threshold"):
            if key not in entry:
                raise ValueError(f"rule in explanation of {instance_id} is missing {key}")
        self._check_feature(entry["feature"], schema)
        threshold = entry["threshold"]
        if isinstance(threshold, bool) or not isinstance(threshold, numbers.Real):
            raise ValueError(f"rule threshold on {entry['feature']} must be a number, got {threshold!r}")
        return Rule(entry["feature"], Orientation.from_token(entry["op"]), threshold)

    @staticmethod
    def _check_feature(feature: Any, schema: Dataset):
        if not isinstance(feature, str) or not schema.has_feature(feature):
            raise ValueError(f"unknown feature '{feature}', expected one of {schema.feature_names}")

    @staticmethod
    def _instance_value(instance_id: str, feature: str, schema: Dataset) -> float:
        try:
            row_id = int(instance_id)
        except ValueError as error:
            raise ValueError(f"text rules need a numeric instance_id, got {instance_id!r}") from error
        positions = numpy.flatnonzero(schema.row_ids == row_id)
        if positions.shape[0] == 0:
            raise ValueError(f"instance {instance_id} is not a row of the dataset")
        return float(schema.rows[positions[0], schema.feature_index(feature)])


def export_explanations(explanations: Sequence[Explanation]) -> Dict[str, Any]:
    return ExplanationExchange().export_explanations(explanations)


def import_explanations(document: Any, schema: Dataset) -> List[Explanation]:
    return ExplanationExchange().import_explanations(document, schema)
