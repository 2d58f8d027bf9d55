import json
from typing import Any, Dict

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.models.decision_tree_model import DecisionTreeModel
from evalxai.src.models.logistic_regression_model import LogisticRegressionModel
from evalxai.src.models.random_forest_model import RandomForestModel

DOCUMENT_VERSION = 1


class ModelSerializer:
    """versioned json documents for trained models, floats are written in shortest round trip form"""

    def to_document(self, model: IProbabilityModel) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "version": DOCUMENT_VERSION,
            "kind": model.kind,
            "feature_names": model.feature_names,
            "params": model.params,
        }
        if isinstance(model, LogisticRegressionModel):
            document["weights"] = [float(weight) for weight in model.weights]
            document["intercept"] = model.intercept
        elif isinstance(model, DecisionTreeModel):
            document["tree"] = self._tree_arrays(model)
        elif isinstance(model, RandomForestModel):
            document["tree_seeds"] = model.tree_seeds
            document["trees"] = [
                {"params": tree.params, **self._tree_arrays(tree)} for tree in model.trees
            ]
        else:
            raise TypeError(f"cannot serialise model of type {type(model).__name__}")
        return document

    @staticmethod
    def _tree_arrays(tree: DecisionTreeModel) -> Dict[str, Any]:
        return {
            "feature": [int(value) for value in tree.feature],
            "threshold": [float(value) for value in tree.threshold],
            "left": [int(value) for value in tree.left],
            "right": [int(value) for value in tree.right],
            "value": [float(value) for value in tree.value],
            "n_samples": [int(value) for value in tree.n_samples],
        }

    @staticmethod
    def _tree_from(feature_names: Any, arrays: Dict[str, Any], params: Dict[str, Any]) -> DecisionTreeModel:
        return DecisionTreeModel(
            feature_names,
            arrays["feature"],
            arrays["threshold"],
            arrays["left"],
            arrays["right"],
            arrays["value"],
            arrays["n_samples"],
            params,
        )

    def from_document(self, document: Dict[str, Any]) -> IProbabilityModel:
        if document.get("version") != DOCUMENT_VERSION:
            raise ValueError(f"unsupported model document version {document.get('version')!r}")
        try:
            kind = document["kind"]
            feature_names = document["feature_names"]
            params = document["params"]
            if kind == "logistic_regression":
                return LogisticRegressionModel(feature_names, document["weights"], document["intercept"], params)
            if kind == "decision_tree":
                return self._tree_from(feature_names, document["tree"], params)
            if kind == "random_forest":
                trees = [self._tree_from(feature_names, tree, tree["params"]) for tree in document["trees"]]
                return RandomForestModel(feature_names, trees, document["tree_seeds"], params)
        except KeyError as error:
            raise ValueError(f"model document is missing {error}") from error
        raise ValueError(f"unknown model kind {kind!r}")

    def dumps(self, model: IProbabilityModel) -> str:
        return json.dumps(self.to_document(model), indent=2, sort_keys=True) + "\n"

    def loads(self, text: str) -> IProbabilityModel:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as error:
            raise ValueError(f"model document is not valid json: {error}") from error
        if not isinstance(document, dict):
            raise ValueError("model document must be a json object")
        return self.from_document(document)

    def save(self, model: IProbabilityModel, path: str):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(self.dumps(model))

    def load(self, path: str) -> IProbabilityModel:
        with open(path, "r", encoding="utf-8") as handle:
            return self.loads(handle.read())
