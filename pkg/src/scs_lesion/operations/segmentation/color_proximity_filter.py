from typing import List, Optional, Tuple
import logging
import numpy as np
from scs_lesion.model import ColorProximityStats
from scs_lesion.operation import Operation
from scs_lesion.operations.core.color_distance import distances
from scs_lesion.operations.core.darkest_color import DarkestColor
from scs_lesion.operations.core.label_components import LabelComponents
from scs_lesion.raster import BinaryMask, PixelRegion, RgbImage, same_grid


class ColorProximityFilter(Operation):
    """
    Removes foreground regions whose mean color is far from the darkest color
    """

    @classmethod
    def description(cls) -> str:
        return """Color proximity criterion. With C* the darkest color in the foreground
        and d_f the distance of each region's mean color from C*, if the spread
        d_max - d_min exceeds T_c every region with d_f above the midpoint
        (d_max + d_min) / 2 moves to the background."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask"},
                "image": {"description": "Quantized RGB image on the same grid"},
            },
            "required": ["mask", "image"],
        }

    def measure(
        self, mask: BinaryMask, image: RgbImage
    ) -> Tuple[List[PixelRegion], Optional[ColorProximityStats]]:
        regions = LabelComponents(settings=self.settings).execute(mask, image=image)
        if not regions:
            return regions, None
        c_star = DarkestColor(settings=self.settings).execute(image, mask)
        d_f = distances(
            np.array([region.mean_color for region in regions]), c_star, self.settings.color_space
        )
        return regions, ColorProximityStats(
            c_star=tuple(float(v) for v in c_star),
            distances=d_f.tolist(),
            d_min=float(d_f.min()),
            d_max=float(d_f.max()),
        )

    def execute(self, mask: BinaryMask, image: RgbImage) -> BinaryMask:
        """Pure function: mask × image → filtered mask"""
        same_grid(mask, image)
        regions, stats = self.measure(mask, image)
        if stats is None or stats.delta <= self.settings.tc:
            return mask

        removed = [
            region for region, d in zip(regions, stats.distances) if d > stats.small_delta
        ]
        logging.info(
            "Color proximity: spread %.2f > %.2f, removing %d of %d region(s)",
            stats.delta, self.settings.tc, len(removed), len(regions),
        )
        bits = mask.bits.copy()
        for region in removed:
            bits[region.pixels[:, 0], region.pixels[:, 1]] = False
        return mask.with_bits(bits)

    def execute_json(self, arguments: dict) -> BinaryMask:
        mask = self.to_mask(self.argument(arguments, "mask"))
        image = self.to_image(self.argument(arguments, "image"))
        return self.execute(mask, image)
