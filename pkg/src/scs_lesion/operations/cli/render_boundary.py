import numpy as np
from scipy import ndimage
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, RgbImage, same_grid

BOUNDARY_COLOR = (0, 255, 0)
THICKNESS = 2


def inner_boundary(bits: np.ndarray, thickness: int = THICKNESS) -> np.ndarray:
    """Foreground pixels within `thickness` steps of the background or the frame."""
    if not bits.any():
        return bits
    core = ndimage.binary_erosion(
        bits, structure=np.ones((3, 3), dtype=bool), iterations=thickness, border_value=0
    )
    return bits & ~core


class RenderBoundary(Operation):
    """
    Draws the lesion boundary over the input image
    """

    @classmethod
    def description(cls) -> str:
        return "Superimposes the 2-pixel inner boundary of a mask, in pure green, onto the input image."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "mask": {"description": "Lesion mask on the same grid"},
            },
            "required": ["image", "mask"],
        }

    def execute(self, image: RgbImage, mask: BinaryMask) -> RgbImage:
        """Pure function: image × mask → image with boundary"""
        same_grid(image, mask)
        out = image.data.copy()
        out[inner_boundary(mask.bits)] = BOUNDARY_COLOR
        return RgbImage(data=out)

    def execute_json(self, arguments: dict) -> RgbImage:
        image = self.to_image(self.argument(arguments, "image"))
        mask = self.to_mask(self.argument(arguments, "mask"))
        return self.execute(image, mask)
