import logging
import numpy as np
from scipy import ndimage
from skimage.morphology import disk
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask


class MorphSmooth(Operation):
    """
    Smooths a mask contour by opening then closing with a disk
    """

    @classmethod
    def description(cls) -> str:
        return """Morphological opening followed by closing with a disk structuring
        element. Radius 0 is the identity. The grid is edge-padded so that
        foreground touching the frame is not eroded by the border."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask"},
                "radius": {"type": "integer", "minimum": 0},
            },
            "required": ["mask", "radius"],
        }

    def execute(self, mask: BinaryMask, radius: int) -> BinaryMask:
        """Pure function: mask × radius → smoothed mask"""
        if not isinstance(mask, BinaryMask):
            raise TypeError(
                f"MorphSmooth expects mask to be BinaryMask, got {type(mask).__name__}"
            )
        if radius < 0:
            raise InvalidInputError(f"radius must be >= 0, got {radius}")
        if radius == 0 or mask.is_empty():
            return mask

        footprint = disk(radius).astype(bool)
        padded = np.pad(mask.bits, radius, mode="edge")
        opened = ndimage.binary_opening(padded, structure=footprint)
        closed = ndimage.binary_closing(opened, structure=footprint)
        bits = closed[radius:-radius, radius:-radius]
        logging.debug("MorphSmooth radius %d: %d -> %d pixels", radius, mask.count, int(bits.sum()))
        return mask.with_bits(bits)

    def execute_json(self, arguments: dict) -> BinaryMask:
        """JSON execution: process arguments and delegate to execute()"""
        mask = self.to_mask(self.argument(arguments, "mask"))
        radius = self.argument(arguments, "radius")
        if not isinstance(radius, int):
            raise TypeError(
                f"MorphSmooth operation expects 'radius' to be int, got {type(radius)}"
            )
        return self.execute(mask, radius)
