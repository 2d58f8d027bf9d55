from typing import Any, Dict, Optional, Type

from evalxai.interface.models.i_model_trainer import IModelTrainer
from evalxai.src.models.decision_tree_trainer import DecisionTreeTrainer
from evalxai.src.models.logistic_regression_trainer import LogisticRegressionTrainer
from evalxai.src.models.random_forest_trainer import RandomForestTrainer


class ModelTrainerFactory:
    TRAINERS: Dict[str, Type[Any]] = {
        "logistic_regression": LogisticRegressionTrainer,
        "decision_tree": DecisionTreeTrainer,
        "random_forest": RandomForestTrainer,
    }

    @staticmethod
    def kinds():
        return list(ModelTrainerFactory.TRAINERS.keys())

    @staticmethod
    def create(kind: str, params: Optional[Dict[str, Any]] = None) -> IModelTrainer:
        if kind not in ModelTrainerFactory.TRAINERS:
            raise KeyError(f"unknown model kind {kind}, expected one of {ModelTrainerFactory.kinds()}")
        trainer_class = ModelTrainerFactory.TRAINERS[kind]
        params = {} if params is None else dict(params)
        unknown = sorted(set(params) - set(trainer_class.PARAMETERS))
        if unknown:
            expected = list(trainer_class.PARAMETERS)
            raise ValueError(f"unknown parameters {unknown} for {kind}, expected some of {expected}")
        return trainer_class(**params)
