from typing import List
import logging
import numpy as np
from scipy import ndimage
from skimage.morphology import remove_small_objects
from scs_lesion.operation import Operation
from scs_lesion.raster import HairMask, RgbImage


def line_footprints(length: int) -> List[np.ndarray]:
    """Linear structuring elements at 0, 45, 90 and 135 degrees."""
    diagonal = np.eye(length, dtype=bool)
    return [
        np.ones((1, length), dtype=bool),
        diagonal,
        np.ones((length, 1), dtype=bool),
        np.fliplr(diagonal),
    ]


def closing_response(gray: np.ndarray, length: int) -> np.ndarray:
    """Largest gain of a linear grey closing over the original gray levels."""
    responses = [
        ndimage.grey_closing(gray, footprint=footprint, mode="nearest") - gray
        for footprint in line_footprints(length)
    ]
    return np.max(responses, axis=0)


class DetectHair(Operation):
    """
    Marks thin dark strokes (hair) in a dermoscopic image
    """

    @classmethod
    def description(cls) -> str:
        return """Hair detection by grayscale closing with linear structuring elements
        of length L in four orientations: a pixel is hair when the strongest
        closing exceeds its gray value by more than the hair threshold.
        Components smaller than the minimum hair area are discarded."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "length": {"type": "integer", "minimum": 3},
            },
            "required": ["image"],
        }

    def execute(self, image: RgbImage, length: int = None) -> HairMask:
        """Pure function: image → hair mask"""
        if not isinstance(image, RgbImage):
            raise TypeError(
                f"DetectHair expects image to be RgbImage, got {type(image).__name__}"
            )
        length = length or self.settings.hair_line_length(image.minsize)
        response = closing_response(image.luma(), length)
        hair = response > self.settings.hair_threshold
        if self.settings.hair_min_area > 0 and hair.any():
            hair = remove_small_objects(hair, min_size=self.settings.hair_min_area, connectivity=2)

        logging.info(
            "Detected %d hair pixels (line length %d)", int(hair.sum()), length
        )
        return HairMask(bits=hair)

    def execute_json(self, arguments: dict) -> HairMask:
        image = self.to_image(self.argument(arguments, "image"))
        length = self.argument(arguments, "length")
        if length is not None and not isinstance(length, int):
            raise TypeError(
                f"DetectHair operation expects 'length' to be int, got {type(length)}"
            )
        return self.execute(image, length)
