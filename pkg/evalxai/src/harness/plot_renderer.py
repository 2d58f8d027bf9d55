import io
from typing import Any, Dict, List

from matplotlib import pyplot  # type: ignore
from PIL import Image  # type: ignore


class PlotRenderer:
    """draws plot series as PIL images"""

    @staticmethod
    def render_lines(metric: str, series: List[Dict[str, Any]]) -> Image:
        figure, axis = pyplot.subplots()
        for entry in series:
            points = [(x, y) for x, y in zip(entry["x"], entry["y"]) if y is not None]
            if not points:
                continue
            x_values, y_values = (list(values) for values in zip(*points))
            axis.plot(x_values, y_values, marker="o", label=f"{entry['model']} {entry['partition']}")
        axis.grid(True, linestyle="-.")
        axis.set_ylabel(metric)
        axis.set_xlabel("alpha")
        axis.set_ylim(-5, 105)
        if axis.get_legend_handles_labels()[0]:
            axis.legend()
        return PlotRenderer._to_image(figure)

    @staticmethod
    def render_boxplots(model: str, boxes: List[Dict[str, Any]]) -> Image:
        figure, axis = pyplot.subplots()
        stats = [
            {
                "label": f"a={box['alpha']:g} R{box['run']}",
                "whislo": box["min"],
                "q1": box["q1"],
                "med": box["median"],
                "q3": box["q3"],
                "whishi": box["max"],
                "fliers": [],
            }
            for box in boxes
            if box["model"] == model and box["median"] is not None
        ]
        if stats:
            axis.bxp(stats, showfliers=False)
        axis.axhline(0.0, color="r", linestyle="--", lw=1)
        axis.grid(True, linestyle="-.")
        axis.set_ylabel("%Prob_diff")
        axis.set_title(model)
        axis.tick_params(axis="x", labelrotation=45)
        return PlotRenderer._to_image(figure)

    @staticmethod
    def _to_image(figure) -> Image:
        buffer = io.BytesIO()
        figure.savefig(buffer, format="png")
        pyplot.close(figure)
        buffer.seek(0)
        image = Image.open(buffer)
        image.load()
        return image
