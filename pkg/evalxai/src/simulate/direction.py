import enum

from evalxai.src.explain.rule import Orientation, PredictedClass


class Direction(enum.Enum):
    GREEN_WARD = "green"
    RED_WARD = "red"

    def opposite(self) -> "Direction":
        return Direction.RED_WARD if self is Direction.GREEN_WARD else Direction.GREEN_WARD

    @staticmethod
    def flip_for(predicted_class: PredictedClass) -> "Direction":
        """the direction that should change the prediction: green for positive, red for negative"""
        return Direction.GREEN_WARD if predicted_class is PredictedClass.POSITIVE else Direction.RED_WARD


def direction_sign(orientation: Orientation, predicted_class: PredictedClass, direction: Direction) -> int:
    """

    which side of the threshold a simulated value goes to. for a positive prediction the green variant
    breaks the rule (a less than rule is pushed above its threshold) and the red variant satisfies it
    harder; a negative prediction mirrors the table.
    :return: +1 or -1
             <int>
    """
    breaks_rule = (direction is Direction.GREEN_WARD) == (predicted_class is PredictedClass.POSITIVE)
    if orientation is Orientation.LESS_THAN:
        return 1 if breaks_rule else -1
    return -1 if breaks_rule else 1
