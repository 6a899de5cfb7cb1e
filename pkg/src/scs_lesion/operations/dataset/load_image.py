from pathlib import Path
from typing import Union
import logging
import numpy as np
from PIL import Image
from scs_lesion.errors import LoadError
from scs_lesion.operation import Operation
from scs_lesion.raster import RgbImage

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp")


def decode(path: Union[str, Path], mode: str) -> np.ndarray:
    """Fully decode an image file into a numpy array of the given PIL mode."""
    try:
        with Image.open(path) as image:
            image.load()
            return np.asarray(image.convert(mode))
    except (OSError, ValueError, SyntaxError) as e:
        raise LoadError(f"Cannot decode {path}: {e}") from e


def read_image(path: Union[str, Path]) -> RgbImage:
    data = decode(path, "RGB")
    logging.debug("Loaded image %s (%dx%d)", path, data.shape[1], data.shape[0])
    return RgbImage(data=data)


class LoadImage(Operation):
    """
    Decodes an image file into an 8-bit RGB image
    """

    @classmethod
    def description(cls) -> str:
        return "Decodes a PNG, JPEG or BMP file into an 8-bit RGB image. Truncated or undecodable files raise a load error."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {"path": {"type": "string"}},
            "required": ["path"],
        }

    def execute(self, path: Union[str, Path]) -> RgbImage:
        """Pure function: path → image"""
        return read_image(path)

    def execute_json(self, arguments: dict) -> RgbImage:
        path = self.argument(arguments, "path")
        if not isinstance(path, str):
            raise TypeError(f"LoadImage operation expects 'path' to be str, got {type(path)}")
        return self.execute(path)
