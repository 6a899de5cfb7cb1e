from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, RgbImage, same_grid

TP_COLOR = (255, 255, 255)
FP_COLOR = (255, 0, 0)
FN_COLOR = (0, 255, 0)


class RenderOverlay(Operation):
    """
    Colors a prediction against ground truth over the input image
    """

    @classmethod
    def description(cls) -> str:
        return "Paints true positives white, false positives red and false negatives green; true negatives keep the input pixel."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "pred": {"description": "Predicted mask"},
                "gt": {"description": "Ground-truth mask"},
            },
            "required": ["image", "pred", "gt"],
        }

    def execute(self, image: RgbImage, pred: BinaryMask, gt: BinaryMask) -> RgbImage:
        """Pure function: image × pred × gt → overlay"""
        same_grid(image, pred)
        same_grid(image, gt)
        out = image.data.copy()
        out[pred.bits & gt.bits] = TP_COLOR
        out[pred.bits & ~gt.bits] = FP_COLOR
        out[~pred.bits & gt.bits] = FN_COLOR
        return RgbImage(data=out)

    def execute_json(self, arguments: dict) -> RgbImage:
        image = self.to_image(self.argument(arguments, "image"))
        pred = self.to_mask(self.argument(arguments, "pred"))
        gt = self.to_mask(self.argument(arguments, "gt"))
        return self.execute(image, pred, gt)
