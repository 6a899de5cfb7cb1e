from pathlib import Path
from typing import Union
from scs_lesion.operation import Operation
from scs_lesion.operations.dataset.load_image import decode
from scs_lesion.raster import BinaryMask

# gray values strictly above this are lesion
THRESHOLD = 128


def read_mask(path: Union[str, Path]) -> BinaryMask:
    # PIL's "L" conversion applies ITU-R 601 luma to RGB masks
    return BinaryMask(bits=decode(path, "L") > THRESHOLD)


class LoadMask(Operation):
    """
    Decodes a ground-truth mask file
    """

    @classmethod
    def description(cls) -> str:
        return """Decodes a grayscale or RGB mask file. A pixel is foreground iff its gray
        value (luma for RGB) is greater than 128."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {"path": {"type": "string"}},
            "required": ["path"],
        }

    def execute(self, path: Union[str, Path]) -> BinaryMask:
        """Pure function: path → mask"""
        return read_mask(path)

    def execute_json(self, arguments: dict) -> BinaryMask:
        path = self.argument(arguments, "path")
        if not isinstance(path, str):
            raise TypeError(f"LoadMask operation expects 'path' to be str, got {type(path)}")
        return self.execute(path)
