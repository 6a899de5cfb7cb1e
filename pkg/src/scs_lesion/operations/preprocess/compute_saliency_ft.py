import logging
import numpy as np
from scipy import ndimage
from skimage.color import rgb2lab
from scs_lesion.operation import Operation
from scs_lesion.raster import RgbImage, SaliencyMap

# 5-tap binomial approximation of a Gaussian
BINOMIAL = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
EPSILON = 1e-9


def blur_lab(lab: np.ndarray) -> np.ndarray:
    blurred = ndimage.correlate1d(lab, BINOMIAL, axis=0, mode="nearest")
    return ndimage.correlate1d(blurred, BINOMIAL, axis=1, mode="nearest")


def frequency_tuned(data: np.ndarray) -> np.ndarray:
    """Raw saliency: CIELAB distance of the blurred image from the global mean."""
    lab = rgb2lab(data.astype(np.float64) / 255.0)
    mean = lab.reshape(-1, 3).mean(axis=0)
    return np.linalg.norm(blur_lab(lab) - mean, axis=2)


class ComputeSaliencyFt(Operation):
    """
    Frequency-tuned saliency map
    """

    @classmethod
    def description(cls) -> str:
        return """Frequency-tuned saliency: per pixel, the CIELAB distance between the
        image's mean Lab color and the 5x5 binomially blurred Lab value. The
        field is rescaled so that its maximum is 255; a constant image yields
        an all-zero map."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
            },
            "required": ["image"],
        }

    def execute(self, image: RgbImage) -> SaliencyMap:
        """Pure function: image → saliency map on [0, 255]"""
        if not isinstance(image, RgbImage):
            raise TypeError(
                f"ComputeSaliencyFt expects image to be RgbImage, got {type(image).__name__}"
            )
        raw = frequency_tuned(image.data)
        peak = float(raw.max())
        if peak <= EPSILON:
            logging.warning("Saliency field is flat; returning an all-zero map")
            return SaliencyMap(values=np.zeros(image.shape))

        values = np.clip(raw * (255.0 / peak), 0.0, 255.0)
        logging.info("Saliency map computed, mean %.2f", float(values.mean()))
        return SaliencyMap(values=values)

    def execute_json(self, arguments: dict) -> SaliencyMap:
        return self.execute(self.to_image(self.argument(arguments, "image")))
