import logging
import numpy as np
from scs_lesion.errors import InvalidInputError
from scs_lesion.model import BinarizationTrace
from scs_lesion.operation import Operation
from scs_lesion.operations.core.label_components import frame_labels, label_bits
from scs_lesion.raster import BinaryMask, SaliencyMap


class BinarizeIterative(Operation):
    """
    Iterated mean-threshold binarization of a saliency map
    """

    @classmethod
    def description(cls) -> str:
        return """Binarizes the saliency map at its mean mu_s, then recomputes mu_s while
        ignoring every foreground component that touches the image frame, and
        repeats. Stops when no new frame-touching component appears, when mu_s
        stops strictly decreasing, or after max_binarize_iters rounds. The
        final mask never contains a frame-touching component."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "sm": {"description": "Saliency map as nested lists"},
            },
            "required": ["sm"],
        }

    def execute(self, sm: SaliencyMap) -> BinarizationTrace:
        """Pure function: saliency map → binarization trace"""
        if not isinstance(sm, SaliencyMap):
            raise TypeError(
                f"BinarizeIterative expects sm to be SaliencyMap, got {type(sm).__name__}"
            )
        if sm.values.size == 0:
            raise InvalidInputError("Cannot binarize an empty saliency map")

        values = sm.values
        excluded = np.zeros(sm.shape, dtype=bool)
        final = np.zeros(sm.shape, dtype=bool)
        thresholds = []

        for iteration in range(self.settings.max_binarize_iters):
            active = ~excluded
            if not active.any():
                break
            mu_s = float(values[active].mean())
            if thresholds and not mu_s < thresholds[-1]:
                logging.debug("mu_s %.3f did not decrease; stopping", mu_s)
                break
            thresholds.append(mu_s)

            foreground = active & (values > mu_s)
            labels, _ = label_bits(foreground, self.settings.connectivity)
            touching = np.isin(labels, frame_labels(labels))
            final = foreground & ~touching
            logging.debug(
                "Binarization round %d: mu_s=%.3f, %d foreground, %d on frame",
                iteration + 1, mu_s, int(foreground.sum()), int(touching.sum()),
            )
            if not touching.any():
                break
            excluded |= touching

        logging.info(
            "Binarized in %d round(s), final mu_s %.3f",
            len(thresholds), thresholds[-1] if thresholds else float("nan"),
        )
        return BinarizationTrace(
            final_mask=BinaryMask(bits=final),
            thresholds=thresholds,
            excluded=BinaryMask(bits=excluded),
            iterations=len(thresholds),
        )

    def execute_json(self, arguments: dict) -> BinarizationTrace:
        return self.execute(self.to_saliency(self.argument(arguments, "sm")))
