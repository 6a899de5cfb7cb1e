from scipy import ndimage
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask


class FillHoles(Operation):
    """
    Fills background pockets not reachable from the image frame
    """

    @classmethod
    def description(cls) -> str:
        return "Flips to foreground every background component (4-connected) that does not reach the image frame."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {"mask": {"description": "Binary mask"}},
            "required": ["mask"],
        }

    def execute(self, mask: BinaryMask) -> BinaryMask:
        """Pure function: mask → mask without holes"""
        if not isinstance(mask, BinaryMask):
            raise TypeError(
                f"FillHoles expects mask to be BinaryMask, got {type(mask).__name__}"
            )
        # the default cross structure floods the background 4-connected
        return mask.with_bits(ndimage.binary_fill_holes(mask.bits))

    def execute_json(self, arguments: dict) -> BinaryMask:
        return self.execute(self.to_mask(self.argument(arguments, "mask")))
