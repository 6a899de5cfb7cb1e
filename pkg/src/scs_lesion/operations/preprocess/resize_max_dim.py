from typing import Tuple
import logging
import numpy as np
from PIL import Image
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import RgbImage


def target_size(width: int, height: int, maxdim: int) -> Tuple[int, int]:
    """(width, height) after scaling the larger side to maxdim; round half up."""
    if max(width, height) <= maxdim:
        return width, height
    scale = maxdim / max(width, height)
    if width >= height:
        return maxdim, max(1, int(np.floor(height * scale + 0.5)))
    return max(1, int(np.floor(width * scale + 0.5))), maxdim


class ResizeMaxDim(Operation):
    """
    Downsamples an image so that its larger side equals maxdim
    """

    @classmethod
    def description(cls) -> str:
        return """Bicubic downsampling so that max(width, height) = maxdim, aspect ratio
        preserved up to rounding. Images already within maxdim are returned
        unchanged (never upscaled)."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "maxdim": {"type": "integer", "minimum": 16},
            },
            "required": ["image"],
        }

    def execute(self, image: RgbImage, maxdim: int = None) -> RgbImage:
        """Pure function: image → reduced image"""
        if not isinstance(image, RgbImage):
            raise TypeError(
                f"ResizeMaxDim expects image to be RgbImage, got {type(image).__name__}"
            )
        maxdim = maxdim or self.settings.maxdim
        if maxdim < 16:
            raise InvalidInputError(f"maxdim must be >= 16, got {maxdim}")

        size = target_size(image.width, image.height, maxdim)
        if size == (image.width, image.height):
            return image

        logging.info(
            "Resizing %dx%d -> %dx%d", image.width, image.height, size[0], size[1]
        )
        # PIL clamps the bicubic overshoot back to [0, 255]
        resized = Image.fromarray(image.data).resize(size, Image.Resampling.BICUBIC)
        return RgbImage(data=np.asarray(resized))

    def execute_json(self, arguments: dict) -> RgbImage:
        image = self.to_image(self.argument(arguments, "image"))
        maxdim = self.argument(arguments, "maxdim")
        if maxdim is not None and not isinstance(maxdim, int):
            raise TypeError(
                f"ResizeMaxDim operation expects 'maxdim' to be int, got {type(maxdim)}"
            )
        return self.execute(image, maxdim)
