from typing import Any, Dict

COEFFICIENTS = [1.5, -2.0, 0.5]


def oracle_document(**overrides: Any) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "dataset": {"synthetic": {"n_rows": 300, "coefficients": COEFFICIENTS, "seed": 4}},
        "preprocessing": {"test_fraction": 0.2},
        "models": [{"name": "lr", "kind": "logistic_regression"}],
        "explainer": {"kind": "oracle"},
        "alphas": [1, 2, 3],
        "runs": 3,
        "master_seed": 7,
    }
    document.update(overrides)
    return document


def surrogate_document(**overrides: Any) -> Dict[str, Any]:
    document = oracle_document(
        models=[
            {"name": "lr", "kind": "logistic_regression"},
            {"name": "rf", "kind": "random_forest", "params": {"n_estimators": 10, "max_depth": 4}},
        ],
        explainer={"kind": "surrogate", "top_k": 2, "config": {"num_samples": 200}},
        runs=2,
        instance_cap=8,
    )
    document.update(overrides)
    return document
