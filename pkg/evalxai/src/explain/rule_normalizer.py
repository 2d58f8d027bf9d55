from typing import Optional

from evalxai.src.explain.rule import Orientation, Rule


def normalize_two_sided(lower: Optional[float], upper: Optional[float], feature: str, instance_value: float) -> Rule:
    """

    turns an interval rule "lower < feature <= upper" into a one sided rule. with both bounds present
    the bound nearer to the instance value is kept, the lower one on ties. a lower bound becomes a more
    than rule and an upper bound a less than rule, so the rule still points into the interval.
    :return: the one sided rule
             <Rule>
    """
    if lower is None and upper is None:
        raise ValueError(f"interval rule on {feature} has no bounds")
    if lower is not None and upper is not None:
        if not lower < upper:
            raise ValueError(f"interval rule on {feature} needs lower < upper, got {lower} and {upper}")
        if abs(instance_value - lower) <= abs(upper - instance_value):
            return Rule(feature, Orientation.MORE_THAN, lower)
        return Rule(feature, Orientation.LESS_THAN, upper)
    if lower is not None:
        return Rule(feature, Orientation.MORE_THAN, lower)
    return Rule(feature, Orientation.LESS_THAN, upper)  # type: ignore
