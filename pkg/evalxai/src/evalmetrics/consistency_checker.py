import itertools
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from evalxai.interface.evalmetrics.i_effect_size import IEffectSize
from evalxai.interface.evalmetrics.i_paired_test import IPairedTest
from evalxai.src.evalmetrics.cliffs_delta import CliffsDelta, EffectSize
from evalxai.src.evalmetrics.wilcoxon_signed_rank import WilcoxonResult, WilcoxonSignedRank

logger = logging.getLogger(__name__)

RunSeries = Dict[float, Dict[str, float]]

CSV_COLUMNS = ["label", "run_a", "run_b", "alpha", "w_statistic", "n_effective", "p_value", "delta", "magnitude"]


class ConsistencyComparison:
    """one run pair at one alpha. runs are numbered from 1"""

    def __init__(
        self,
        run_a: int,
        run_b: int,
        alpha: float,
        wilcoxon: WilcoxonResult,
        effect_size: EffectSize,
        significance: float,
    ):
        self._run_a = run_a
        self._run_b = run_b
        self._alpha = float(alpha)
        self._wilcoxon = wilcoxon
        self._effect_size = effect_size
        self._significance = significance

    @property
    def run_a(self) -> int:
        return self._run_a

    @property
    def run_b(self) -> int:
        return self._run_b

    @property
    def pair_name(self) -> str:
        return f"R_{self._run_a}_R_{self._run_b}"

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def wilcoxon(self) -> WilcoxonResult:
        return self._wilcoxon

    @property
    def effect_size(self) -> EffectSize:
        return self._effect_size

    @property
    def p_value(self) -> float:
        return self._wilcoxon.p_value

    @property
    def abs_delta(self) -> float:
        return abs(self._effect_size.delta)

    @property
    def inconsistent(self) -> bool:
        return self._wilcoxon.p_value < self._significance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": self.pair_name,
            "alpha": self._alpha,
            "w_statistic": self._wilcoxon.w_statistic,
            "n_effective": self._wilcoxon.n_effective,
            "method": self._wilcoxon.method,
            "all_zero": self._wilcoxon.all_zero,
            "p_value": self.p_value,
            "delta": self.abs_delta,
            "magnitude": self._effect_size.magnitude,
            "inconsistent": self.inconsistent,
        }


class ConsistencyReport:
    def __init__(self, label: str, comparisons: Sequence[ConsistencyComparison], significance: float):
        self._label = label
        self._comparisons = list(comparisons)
        self._significance = significance

    @property
    def label(self) -> str:
        return self._label

    @property
    def comparisons(self) -> List[ConsistencyComparison]:
        return list(self._comparisons)

    @property
    def significance(self) -> float:
        return self._significance

    @property
    def inconsistent_count(self) -> int:
        return sum(comparison.inconsistent for comparison in self._comparisons)

    @property
    def total(self) -> int:
        return len(self._comparisons)

    @property
    def percentage(self) -> Optional[float]:
        return None if self.total == 0 else 100.0 * self.inconsistent_count / self.total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self._label,
            "significance": self._significance,
            "inconsistent_count": self.inconsistent_count,
            "total": self.total,
            "percentage": self.percentage,
            "comparisons": [comparison.to_dict() for comparison in self._comparisons],
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "label": self._label,
                "run_a": comparison.run_a,
                "run_b": comparison.run_b,
                "alpha": comparison.alpha,
                "w_statistic": comparison.wilcoxon.w_statistic,
                "n_effective": comparison.wilcoxon.n_effective,
                "p_value": comparison.p_value,
                "delta": comparison.abs_delta,
                "magnitude": comparison.effect_size.magnitude,
            }
            for comparison in self._comparisons
        ]

    def __str__(self) -> str:
        return f"{ConsistencyReport.__name__}: {self._label} {self.inconsistent_count}/{self.total} inconsistent"

    def __repr__(self) -> str:
        return self.__str__()


def align_runs(runs: Sequence[RunSeries]) -> List[RunSeries]:
    """

    restricts every (run, alpha) series to the instance ids present in all runs at that alpha
    :return: the aligned series, ids in sorted order
             <List[RunSeries]>
    """
    if not runs:
        return []
    aligned: List[RunSeries] = [{} for _ in runs]
    for alpha in runs[0]:
        shared = set(runs[0][alpha])
        for run in runs[1:]:
            shared &= set(run.get(alpha, {}))
        for index, run in enumerate(runs):
            aligned[index][alpha] = {instance_id: run[alpha][instance_id] for instance_id in sorted(shared)}
    return aligned


class ConsistencyChecker:
    """
    compares repeated executions of the same experiment. for every unordered run pair and every alpha
    the prob diff series are tested with a paired test and sized with an effect size; the pair is
    inconsistent at that alpha when p < significance
    """

    def __init__(
        self,
        paired_test: Optional[IPairedTest] = None,
        effect_size: Optional[IEffectSize] = None,
        significance: float = 0.05,
    ):
        if paired_test is None:
            paired_test = WilcoxonSignedRank()
        if effect_size is None:
            effect_size = CliffsDelta()
        if not 0.0 < significance < 1.0:
            raise ValueError(f"significance must lie in (0, 1), got {significance}")
        self._paired_test = paired_test
        self._effect_size = effect_size
        self._significance = significance

    def check(self, runs: Sequence[RunSeries], label: str = "") -> ConsistencyReport:
        if len(runs) < 2:
            raise ValueError(f"consistency needs at least 2 runs, got {len(runs)}")
        alphas = sorted(runs[0])
        for index, run in enumerate(runs):
            if sorted(run) != alphas:
                raise ValueError(f"run {index + 1} has alphas {sorted(run)}, expected {alphas}")

        comparisons = []
        for (index_a, run_a), (index_b, run_b) in itertools.combinations(enumerate(runs, start=1), 2):
            for alpha in alphas:
                first, second = self._paired_values(run_a[alpha], run_b[alpha], index_a, index_b, alpha)
                comparisons.append(
                    ConsistencyComparison(
                        index_a,
                        index_b,
                        alpha,
                        self._paired_test.test(first, second),
                        self._effect_size.measure(first, second) if first else EffectSize(0.0),
                        self._significance,
                    )
                )
        report = ConsistencyReport(label, comparisons, self._significance)
        logger.info("%s", report)
        return report

    @staticmethod
    def _paired_values(
        series_a: Dict[str, float], series_b: Dict[str, float], index_a: int, index_b: int, alpha: float
    ) -> Tuple[List[float], List[float]]:
        if set(series_a) != set(series_b):
            missing = sorted(set(series_a) ^ set(series_b))
            raise ValueError(f"runs {index_a} and {index_b} are misaligned at alpha {alpha}, ids {missing[:5]}")
        instance_ids = sorted(series_a)
        return [series_a[i] for i in instance_ids], [series_b[i] for i in instance_ids]


def consistency(runs: Sequence[RunSeries], significance: float = 0.05, label: str = "") -> ConsistencyReport:
    return ConsistencyChecker(significance=significance).check(runs, label)


def aggregate_consistency(reports: Sequence[ConsistencyReport]) -> Dict[str, Any]:
    """

    :return: inconsistent combinations summed over reports, e.g. across models and datasets
             <Dict[str, Any]>
    """
    count = sum(report.inconsistent_count for report in reports)
    total = sum(report.total for report in reports)
    return {"inconsistent_count": count, "total": total, "percentage": None if total == 0 else 100.0 * count / total}
