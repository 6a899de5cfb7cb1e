from typing import Optional
import logging
import numpy as np
from scipy import ndimage
from scs_lesion.errors import InvalidInputError
from scs_lesion.model import TransitionRegion
from scs_lesion.operation import Operation
from scs_lesion.operations.core.color_distance import distances
from scs_lesion.operations.core.label_components import frame_labels, label_bits, structure_for
from scs_lesion.raster import BinaryMask, RgbImage, SaliencyMap, same_grid


class ExpandForeground(Operation):
    """
    Grows the foreground into the low-saliency color transition band
    """

    @classmethod
    def description(cls) -> str:
        return """Foreground expansion. Candidates are non-foreground pixels with
        saliency below T_s (or, with the band rule, between T_s and mu_s).
        With C_m the mean candidate color and C_b the mean color of the other
        background pixels, a candidate farther than theta2 * d(C_b, C_m) from
        C_m is rejected; surviving candidate components adjacent to the
        foreground join it. With the frame guard enabled, components reaching
        the image frame are left out."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask"},
                "sm": {"description": "Saliency map on the same grid"},
                "image": {"description": "Quantized RGB image on the same grid"},
                "mu_s": {"type": "number", "description": "Final binarization threshold (band rule)"},
            },
            "required": ["mask", "sm", "image"],
        }

    def candidates(self, mask: BinaryMask, sm: SaliencyMap, mu_s: Optional[float]) -> np.ndarray:
        outside = ~mask.bits
        if self.settings.candidate_rule == "band":
            if mu_s is None:
                raise InvalidInputError("The band candidate rule needs mu_s")
            return outside & (sm.values >= self.settings.ts) & (sm.values < mu_s)
        return outside & (sm.values < self.settings.ts)

    def transition(
        self, mask: BinaryMask, sm: SaliencyMap, image: RgbImage, mu_s: Optional[float] = None
    ) -> Optional[TransitionRegion]:
        """The candidate band with its color statistics, or None when either side is empty."""
        candidates = self.candidates(mask, sm, mu_s)
        rest = ~mask.bits & ~candidates
        if not candidates.any() or not rest.any():
            return None
        c_m = image.data[candidates].astype(np.float64).mean(axis=0)
        c_b = image.data[rest].astype(np.float64).mean(axis=0)
        spread = float(distances(c_b.reshape(1, 3), c_m, self.settings.color_space)[0])
        return TransitionRegion(
            candidates=BinaryMask(bits=candidates),
            mean_color=tuple(float(v) for v in c_m),
            background_mean_color=tuple(float(v) for v in c_b),
            cutoff=self.settings.theta2 * spread,
        )

    def execute(
        self, mask: BinaryMask, sm: SaliencyMap, image: RgbImage, mu_s: Optional[float] = None
    ) -> BinaryMask:
        """Pure function: mask × saliency × image → expanded mask"""
        same_grid(mask, sm)
        same_grid(mask, image)
        region = self.transition(mask, sm, image, mu_s)
        if region is None:
            logging.debug("No transition band; foreground unchanged")
            return mask

        candidates = region.candidates.bits
        d_p = distances(image.data[candidates], region.mean_color, self.settings.color_space)
        survivors = np.zeros(mask.shape, dtype=bool)
        survivors[candidates] = d_p <= region.cutoff

        connectivity = self.settings.connectivity
        labels, count = label_bits(survivors, connectivity)
        if count == 0:
            return mask
        reach = ndimage.binary_dilation(mask.bits, structure=structure_for(connectivity))
        adjacent = np.unique(labels[reach & survivors])
        if self.settings.expand_frame_guard:
            adjacent = np.setdiff1d(adjacent, frame_labels(labels))
        adjacent = adjacent[adjacent > 0]

        grown = np.isin(labels, adjacent)
        logging.info(
            "Expansion: %d candidates, %d survive (cutoff %.2f), %d merged",
            int(candidates.sum()), int(survivors.sum()), region.cutoff, int(grown.sum()),
        )
        return mask.with_bits(mask.bits | grown)

    def execute_json(self, arguments: dict) -> BinaryMask:
        mask = self.to_mask(self.argument(arguments, "mask"))
        sm = self.to_saliency(self.argument(arguments, "sm"))
        image = self.to_image(self.argument(arguments, "image"))
        mu_s = self.argument(arguments, "mu_s")
        if mu_s is not None and not isinstance(mu_s, (int, float)):
            raise TypeError(
                f"ExpandForeground operation expects 'mu_s' to be number, got {type(mu_s)}"
            )
        return self.execute(mask, sm, image, mu_s)
