import logging
from typing import Dict, List, Optional

import numpy

from evalxai.interface.models.i_probability_model import IProbabilityModel
from evalxai.src.data.dataset import Dataset
from evalxai.src.data.feature_stats import FeatureStats
from evalxai.src.evalmetrics.instance_outcome import InstanceOutcome
from evalxai.src.explain.explanation import Explanation
from evalxai.src.simulate.direction import Direction
from evalxai.src.simulate.instance_simulator import InstanceSimulator, SimulationConfig

logger = logging.getLogger(__name__)


class SimulatedInstance:
    """an outcome together with the rows the model was evaluated on, the variants are None on failure"""

    def __init__(
        self,
        outcome: InstanceOutcome,
        original: numpy.ndarray,
        green: Optional[numpy.ndarray],
        red: Optional[numpy.ndarray],
    ):
        self._outcome = outcome
        self._original = original
        self._green = green
        self._red = red

    @property
    def outcome(self) -> InstanceOutcome:
        return self._outcome

    @property
    def original(self) -> numpy.ndarray:
        return self._original

    @property
    def green(self) -> Optional[numpy.ndarray]:
        return self._green

    @property
    def red(self) -> Optional[numpy.ndarray]:
        return self._red


class OutcomeBuilder:
    def build_detailed(
        self,
        model: IProbabilityModel,
        test: Dataset,
        explanations: Dict[str, Explanation],
        stats: FeatureStats,
        config: SimulationConfig,
    ) -> List[SimulatedInstance]:
        """

        one entry per test row in row order. explanations are keyed by str(row_id); a missing or empty
        explanation marks the outcome as failed and no variant is simulated for it
        :return: outcomes with their original, green and red rows
                 <List[SimulatedInstance]>
        """
        simulator = InstanceSimulator(stats, config)
        original_risks = model.risks(test.rows)
        variant_rows = []
        pending = []
        for position, row_id in enumerate(test.row_ids):
            explanation = explanations.get(str(row_id))
            if explanation is None or explanation.failed:
                continue
            green = simulator.simulate(test.rows[position], explanation, Direction.GREEN_WARD)
            red = simulator.simulate(test.rows[position], explanation, Direction.RED_WARD)
            pending.append((position, green, red))
            variant_rows.extend([green.row, red.row])
        variant_risks = model.risks(numpy.array(variant_rows)) if variant_rows else numpy.zeros(0)

        simulated: Dict[int, SimulatedInstance] = {}
        for index, (position, green, red) in enumerate(pending):
            clamped = tuple(dict.fromkeys(green.clamped + red.clamped))
            outcome = InstanceOutcome(
                str(test.row_ids[position]),
                int(test.labels[position]),
                float(original_risks[position]),
                float(variant_risks[2 * index]),
                float(variant_risks[2 * index + 1]),
                clamped=clamped,
            )
            simulated[position] = SimulatedInstance(outcome, test.rows[position], green.row, red.row)

        results = []
        for position in range(test.n_rows):
            if position in simulated:
                results.append(simulated[position])
                continue
            outcome = InstanceOutcome(
                str(test.row_ids[position]),
                int(test.labels[position]),
                float(original_risks[position]),
                None,
                None,
                explanation_failed=True,
            )
            results.append(SimulatedInstance(outcome, test.rows[position], None, None))
        failures = test.n_rows - len(pending)
        if failures:
            logger.debug("%d of %d instances have no explanation at alpha %s", failures, test.n_rows, config.alpha)
        return results

    def build(
        self,
        model: IProbabilityModel,
        test: Dataset,
        explanations: Dict[str, Explanation],
        stats: FeatureStats,
        config: SimulationConfig,
    ) -> List[InstanceOutcome]:
        return [simulated.outcome for simulated in self.build_detailed(model, test, explanations, stats, config)]


def build_outcomes(
    model: IProbabilityModel,
    test: Dataset,
    explanations: Dict[str, Explanation],
    stats: FeatureStats,
    config: SimulationConfig,
) -> List[InstanceOutcome]:
    return OutcomeBuilder().build(model, test, explanations, stats, config)
