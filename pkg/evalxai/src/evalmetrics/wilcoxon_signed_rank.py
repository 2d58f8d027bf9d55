import logging
import math
from typing import Sequence

import numpy
from scipy.stats import norm, rankdata  # type: ignore

logger = logging.getLogger(__name__)

EXACT = "exact"
APPROXIMATE = "normal-approximation"


class WilcoxonResult:
    def __init__(self, w_statistic: float, n_effective: int, p_value: float, method: str, all_zero: bool = False):
        if not 0.0 <= p_value <= 1.0:
            raise ValueError(f"p value must lie in [0, 1], got {p_value}")
        if w_statistic < 0:
            raise ValueError(f"w statistic must not be negative, got {w_statistic}")
        self._w_statistic = float(w_statistic)
        self._n_effective = int(n_effective)
        self._p_value = float(p_value)
        self._method = method
        self._all_zero = all_zero

    @property
    def w_statistic(self) -> float:
        return self._w_statistic

    @property
    def n_effective(self) -> int:
        return self._n_effective

    @property
    def p_value(self) -> float:
        return self._p_value

    @property
    def method(self) -> str:
        return self._method

    @property
    def all_zero(self) -> bool:
        return self._all_zero

    def __str__(self) -> str:
        return (
            f"{WilcoxonResult.__name__}: W={self._w_statistic!r}, n={self._n_effective}, p={self._p_value!r}, "
            f"method={self._method}{', all-zero' if self._all_zero else ''}"
        )

    def __repr__(self) -> str:
        return self.__str__()


def exact_lower_tail(doubled_ranks: numpy.ndarray, doubled_statistic: int) -> float:
    """

    P(T <= W) for T the sum of a uniformly random subset of the ranks, which is the null distribution of
    the signed rank statistic. ranks are doubled so tied (half integer) ranks stay integral
    :return: the lower tail probability
             <float>
    """
    distribution = numpy.zeros(int(doubled_ranks.sum()) + 1)
    distribution[0] = 1.0
    for rank in doubled_ranks:
        shifted = numpy.zeros_like(distribution)
        shifted[rank:] = distribution[: distribution.shape[0] - rank]
        distribution = 0.5 * (distribution + shifted)
    return float(distribution[: doubled_statistic + 1].sum())


class WilcoxonSignedRank:
    """
    two sided wilcoxon signed rank test of paired samples

    zero differences are dropped and tied absolute differences get average ranks. up to exact_limit
    nonzero differences the p value is exact, above it the normal approximation with continuity and tie
    corrections is used. method forces one or the other.
    """

    def __init__(self, exact_limit: int = 20, method: str = "auto"):
        if method not in ("auto", EXACT, APPROXIMATE):
            raise ValueError(f"method must be auto, {EXACT} or {APPROXIMATE}, got {method}")
        self._exact_limit = exact_limit
        self._method = method

    def test(self, first: Sequence[float], second: Sequence[float]) -> WilcoxonResult:
        first_values = numpy.asarray(first, dtype=float)
        second_values = numpy.asarray(second, dtype=float)
        if first_values.shape != second_values.shape or first_values.ndim != 1:
            raise ValueError(f"paired samples need equal lengths, got {first_values.shape} and {second_values.shape}")
        differences = first_values - second_values
        if not numpy.all(numpy.isfinite(differences)):
            raise ValueError("paired samples must be finite")
        differences = differences[differences != 0]
        n_effective = differences.shape[0]
        if n_effective == 0:
            return WilcoxonResult(0.0, 0, 1.0, EXACT, all_zero=True)

        ranks = rankdata(numpy.abs(differences))
        positive_sum = float(ranks[differences > 0].sum())
        negative_sum = float(ranks[differences < 0].sum())
        statistic = min(positive_sum, negative_sum)

        method = self._method
        if method == "auto":
            method = EXACT if n_effective <= self._exact_limit else APPROXIMATE
        if method == EXACT:
            doubled_ranks = numpy.rint(2 * ranks).astype(numpy.int64)
            p_value = min(1.0, 2.0 * exact_lower_tail(doubled_ranks, int(round(2 * statistic))))
        else:
            mean = n_effective * (n_effective + 1) / 4.0
            _, tie_counts = numpy.unique(ranks, return_counts=True)
            variance = n_effective * (n_effective + 1) * (2 * n_effective + 1) / 24.0
            variance -= float(numpy.sum(tie_counts**3 - tie_counts)) / 48.0
            z_score = (statistic - mean + 0.5) / math.sqrt(variance)
            p_value = min(1.0, 2.0 * float(norm.cdf(z_score)))
        return WilcoxonResult(statistic, n_effective, p_value, method)


def wilcoxon_signed_rank(first: Sequence[float], second: Sequence[float]) -> WilcoxonResult:
    return WilcoxonSignedRank().test(first, second)
