from typing import Tuple
import logging
import numpy as np
from scs_lesion.operation import Operation
from scs_lesion.operations.core.convex_hull_mask import ConvexHullMask
from scs_lesion.operations.core.fill_holes import FillHoles
from scs_lesion.operations.core.label_components import LabelComponents
from scs_lesion.operations.core.morph_smooth import MorphSmooth
from scs_lesion.raster import BinaryMask


def centered_disk(width: int, height: int) -> BinaryMask:
    """Disk of radius minsize / 4 around the grid centre."""
    radius = min(width, height) / 4.0
    rows, cols = np.ogrid[:height, :width]
    bits = (rows - (height - 1) / 2.0) ** 2 + (cols - (width - 1) / 2.0) ** 2 <= radius**2
    return BinaryMask(bits=bits)


class FinalizeLesion(Operation):
    """
    Smooths, fills, selects and hulls the lesion mask
    """

    @classmethod
    def description(cls) -> str:
        return """Smooths the contour (opening then closing with a disk), fills holes,
        keeps the largest component when a single lesion is expected and
        replaces it by its convex hull. An empty mask yields a centered disk
        flagged as low confidence."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask"},
            },
            "required": ["mask"],
        }

    def fallback(self, mask: BinaryMask) -> Tuple[BinaryMask, bool]:
        logging.warning("Empty lesion mask; falling back to a centered disk")
        return centered_disk(mask.width, mask.height), True

    def execute(self, mask: BinaryMask) -> Tuple[BinaryMask, bool]:
        """Pure function: mask → (final mask, low_confidence)"""
        if not isinstance(mask, BinaryMask):
            raise TypeError(
                f"FinalizeLesion expects mask to be BinaryMask, got {type(mask).__name__}"
            )
        if mask.is_empty():
            return self.fallback(mask)

        radius = self.settings.smoothing_radius(mask.minsize)
        smoothed = MorphSmooth(settings=self.settings).execute(mask, radius)
        filled = FillHoles(settings=self.settings).execute(smoothed)
        if filled.is_empty():
            return self.fallback(mask)

        regions = LabelComponents(settings=self.settings).execute(filled)
        if self.settings.single_lesion:
            # regions come in raster order, so max() keeps the topmost-leftmost on ties
            regions = [max(regions, key=lambda region: region.area)]

        if not self.settings.compute_hull:
            pixels = np.concatenate([region.pixels for region in regions])
            return BinaryMask.from_pixels(pixels, mask.width, mask.height), False

        hull = ConvexHullMask(settings=self.settings)
        bits = np.zeros(mask.shape, dtype=bool)
        for region in regions:
            bits |= hull.execute(region.pixels, mask.width, mask.height).bits
        logging.info("Final lesion: %d component(s), %d pixels", len(regions), int(bits.sum()))
        return BinaryMask(bits=bits), False

    def execute_json(self, arguments: dict) -> dict:
        mask, low_confidence = self.execute(self.to_mask(self.argument(arguments, "mask")))
        return {"mask": mask, "low_confidence": low_confidence}
