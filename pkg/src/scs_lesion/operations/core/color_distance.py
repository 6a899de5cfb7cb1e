from typing import Sequence
import numpy as np
from skimage.color import rgb2lab
from scs_lesion.operation import Operation


def to_space(colors: np.ndarray, space: str) -> np.ndarray:
    """(..., 3) RGB on [0, 255] → coordinates of the requested color space."""
    colors = np.asarray(colors, dtype=np.float64)
    if space == "rgb":
        return colors
    if space == "lab":
        return rgb2lab(np.clip(colors, 0, 255).reshape(-1, 1, 3) / 255.0).reshape(colors.shape)
    raise ValueError(f"Unknown color space: {space}")


def distances(colors: np.ndarray, reference: Sequence[float], space: str = "rgb") -> np.ndarray:
    """Distance of every color in an (N, 3) array from one reference color."""
    colors = to_space(np.asarray(colors, dtype=np.float64).reshape(-1, 3), space)
    reference = to_space(np.asarray(reference, dtype=np.float64).reshape(1, 3), space)
    return np.linalg.norm(colors - reference, axis=1)


class ColorDistance(Operation):
    """
    Distance between two colors
    """

    @classmethod
    def description(cls) -> str:
        return """Euclidean distance between two RGB triples in the configured
        color space (8-bit RGB by default, CIELAB when color_space = lab)."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "a": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
                "b": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
            },
            "required": ["a", "b"],
        }

    def execute(self, a: Sequence[float], b: Sequence[float]) -> float:
        """Pure function: RGB × RGB → distance"""
        return float(distances(np.asarray(a).reshape(1, 3), b, self.settings.color_space)[0])

    def execute_json(self, arguments: dict) -> float:
        a = self.to_color(self.argument(arguments, "a"))
        b = self.to_color(self.argument(arguments, "b"))
        return self.execute(a, b)
