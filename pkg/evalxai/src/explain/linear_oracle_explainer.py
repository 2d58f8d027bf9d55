import numpy

from evalxai.interface.explain.i_explainer import IExplainer
from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.explain.explanation import Explanation
from evalxai.src.explain.rule import Orientation, PredictedClass, Rule
from evalxai.src.models.logistic_regression_model import LogisticRegressionModel


class LinearOracleExplainer(IExplainer):
    """
    exact explanations of a logistic regression: the top_k features by |weight|, each thresholded at the
    instance's own value and oriented so the rule supports the predicted class
    """

    def __init__(self, top_k: int = 3, explainer_id: str = "oracle"):
        if top_k < 1:
            raise ValueError(f"top_k must be at least 1, got {top_k}")
        self._top_k = top_k
        self._explainer_id = explainer_id

    @property
    def explainer_id(self) -> str:
        return self._explainer_id

    def explain(self, model: IProbabilityModel, instance: numpy.ndarray, instance_id: str, seed: int) -> Explanation:
        if not isinstance(model, LogisticRegressionModel):
            raise TypeError(f"the oracle explainer needs a logistic regression model, got {model.kind}")
        instance = numpy.asarray(instance, dtype=float)
        weights = model.weights
        if not numpy.any(weights != 0):
            raise ValueError("all weights are zero, nothing to explain")
        risk = model.risk(instance)
        predicted_class = PredictedClass.from_risk(risk)
        negative = predicted_class is PredictedClass.NEGATIVE
        order = numpy.argsort(-numpy.abs(weights), kind="stable")
        rules = []
        for feature in order[: self._top_k]:
            if weights[feature] == 0:
                break
            orientation = Orientation.MORE_THAN if (weights[feature] > 0) != negative else Orientation.LESS_THAN
            rules.append(Rule(model.feature_names[feature], orientation, instance[feature]))
        return Explanation(instance_id, predicted_class, risk, rules, self._explainer_id, seed)


def linear_oracle_explain(model: LogisticRegressionModel, instance: numpy.ndarray, top_k: int) -> Explanation:
    return LinearOracleExplainer(top_k).explain(model, instance, "0", 0)
