from typing import Tuple
import logging
import numpy as np
from scs_lesion.operation import Operation
from scs_lesion.raster import SaliencyMap


def saturation_points(values: np.ndarray, percent: float = 1.0) -> Tuple[float, float]:
    """Nearest-rank lower and upper percentiles of the value multiset."""
    lo, hi = np.percentile(values.ravel(), [percent, 100.0 - percent], method="inverted_cdf")
    return float(lo), float(hi)


class StretchContrast(Operation):
    """
    Saturates the bottom and top 1% of saliency values
    """

    @classmethod
    def description(cls) -> str:
        return """Linear contrast stretch of a saliency map: values at or below the 1st
        percentile become 0, values at or above the 99th become 255, and the
        range between is mapped affinely. Degenerate maps become all zeros."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "sm": {"description": "Saliency map as nested lists"},
            },
            "required": ["sm"],
        }

    def execute(self, sm: SaliencyMap) -> SaliencyMap:
        """Pure function: saliency map → stretched saliency map"""
        if not isinstance(sm, SaliencyMap):
            raise TypeError(
                f"StretchContrast expects sm to be SaliencyMap, got {type(sm).__name__}"
            )
        if sm.values.size == 0:
            return sm
        lo, hi = saturation_points(sm.values)
        if hi <= lo:
            logging.warning("Saliency percentiles coincide at %.3f; map zeroed", lo)
            return SaliencyMap(values=np.zeros(sm.shape))

        logging.debug("Stretching saliency between %.3f and %.3f", lo, hi)
        stretched = np.clip((sm.values - lo) / (hi - lo), 0.0, 1.0) * 255.0
        return SaliencyMap(values=stretched)

    def execute_json(self, arguments: dict) -> SaliencyMap:
        return self.execute(self.to_saliency(self.argument(arguments, "sm")))
