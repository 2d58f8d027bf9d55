from typing import Any, Dict, List, Sequence

import numpy

from evalxai.interface.models.i_probability_model import IProbabilityModel

CLASSIFICATION_THRESHOLD = 0.5


class ProbabilityModel(IProbabilityModel):
    """shared plumbing, subclasses only implement risks"""

    def __init__(self, feature_names: Sequence[str], params: Dict[str, Any]):
        self._feature_names = list(feature_names)
        self._params = dict(params)

    @property
    def feature_names(self) -> List[str]:
        return list(self._feature_names)

    @property
    def params(self) -> Dict[str, Any]:
        return dict(self._params)

    def _check_rows(self, rows: numpy.ndarray) -> numpy.ndarray:
        rows = numpy.asarray(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self._feature_names):
            raise ValueError(f"expected rows of {len(self._feature_names)} features, got shape {rows.shape}")
        return rows

    def risk(self, instance: numpy.ndarray) -> float:
        return float(self.risks(numpy.asarray(instance, dtype=float).reshape(1, -1))[0])

    def classify(self, instance: numpy.ndarray) -> int:
        return int(self.risk(instance) >= CLASSIFICATION_THRESHOLD)

    def __str__(self) -> str:
        return f"{type(self).__name__}: features={self._feature_names}, params={self._params}"

    def __repr__(self) -> str:
        return self.__str__()


def classify_risks(risks: numpy.ndarray) -> numpy.ndarray:
    return (numpy.asarray(risks) >= CLASSIFICATION_THRESHOLD).astype(numpy.int64)
