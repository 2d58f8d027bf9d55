from typing import Any, Dict, Optional


class ModelScore:
    """accuracy, f1 of the positive class and auc, each in [0, 1]; auc is None for single class test sets"""

    def __init__(self, accuracy: float, f1: float, auc: Optional[float]):
        for name, value in (("accuracy", accuracy), ("f1", f1), ("auc", auc)):
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        self._accuracy = float(accuracy)
        self._f1 = float(f1)
        self._auc = None if auc is None else float(auc)

    @property
    def accuracy(self) -> float:
        return self._accuracy

    @property
    def f1(self) -> float:
        return self._f1

    @property
    def auc(self) -> Optional[float]:
        return self._auc

    def to_dict(self) -> Dict[str, Any]:
        return {"accuracy": self._accuracy, "f1": self._f1, "auc": self._auc}

    def __eq__(self, other: object) -> bool:
        return str(self) == str(other)

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.__str__())

    def __str__(self) -> str:
        return f"{ModelScore.__name__}: accuracy={self._accuracy!r}, f1={self._f1!r}, auc={self._auc!r}"

    def __repr__(self) -> str:
        return self.__str__()
