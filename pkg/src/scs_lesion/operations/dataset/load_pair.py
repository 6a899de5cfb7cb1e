from typing import Optional, Tuple
from scs_lesion.errors import LoadError
from scs_lesion.model import SamplePair
from scs_lesion.operation import Operation
from scs_lesion.operations.dataset.load_image import read_image
from scs_lesion.operations.dataset.load_mask import read_mask
from scs_lesion.raster import BinaryMask, RgbImage


class LoadPair(Operation):
    """
    Loads a sample's image and, when present, its ground truth
    """

    @classmethod
    def description(cls) -> str:
        return "Decodes the image and ground-truth mask of one sample; their dimensions must agree."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "id": {"type": "string"},
                "image_path": {"type": "string"},
                "gt_path": {"type": ["string", "null"]},
            },
            "required": ["id", "image_path"],
        }

    def execute(self, sample: SamplePair) -> Tuple[RgbImage, Optional[BinaryMask]]:
        """Pure function: sample → (image, mask or None)"""
        image = read_image(sample.image_path)
        if sample.gt_path is None:
            return image, None
        gt = read_mask(sample.gt_path)
        if gt.shape != image.shape:
            raise LoadError(
                f"Sample {sample.id}: image is {image.width}x{image.height} "
                f"but ground truth is {gt.width}x{gt.height}"
            )
        return image, gt

    def execute_json(self, arguments: dict) -> Tuple[RgbImage, Optional[BinaryMask]]:
        sample = SamplePair(
            id=self.argument(arguments, "id"),
            image_path=self.argument(arguments, "image_path"),
            gt_path=self.argument(arguments, "gt_path"),
        )
        return self.execute(sample)
