from typing import Tuple
import logging
import numpy as np
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, RgbImage, same_grid

# integer luma weights (x1000) keep ties exact
LUMA = np.array([299, 587, 114], dtype=np.int64)


class DarkestColor(Operation):
    """
    Finds the darkest color present under a mask (C*)
    """

    @classmethod
    def description(cls) -> str:
        return """Among the distinct colors at foreground pixels returns the one with
        minimum luma (0.299R + 0.587G + 0.114B); ties go to the lexicographically
        smallest (R, G, B)."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "mask": {"description": "Binary mask on the same grid"},
            },
            "required": ["image", "mask"],
        }

    def execute(self, image: RgbImage, mask: BinaryMask) -> Tuple[int, int, int]:
        """Pure function: image × mask → RGB triple"""
        same_grid(image, mask)
        if mask.is_empty():
            raise InvalidInputError("DarkestColor needs at least one foreground pixel")
        # np.unique sorts rows lexicographically, so the first minimum wins ties
        colors = np.unique(image.data[mask.bits], axis=0)
        luma = colors.astype(np.int64) @ LUMA
        darkest = colors[int(np.argmin(luma))]
        logging.debug("Darkest of %d foreground colors: %s", len(colors), darkest)
        return tuple(int(channel) for channel in darkest)

    def execute_json(self, arguments: dict) -> Tuple[int, int, int]:
        image = self.to_image(self.argument(arguments, "image"))
        mask = self.to_mask(self.argument(arguments, "mask"))
        return self.execute(image, mask)
