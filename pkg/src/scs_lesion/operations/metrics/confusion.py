import numpy as np
from scs_lesion.model import ConfusionCounts
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, same_grid


class Confusion(Operation):
    """
    Pixel-wise confusion counts of a predicted mask against ground truth
    """

    @classmethod
    def description(cls) -> str:
        return "Counts true/false positives and negatives of a predicted mask against a ground-truth mask on the same grid."

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "pred": {"description": "Predicted mask (nested 0/1 lists or mask file path)"},
                "gt": {"description": "Ground-truth mask (nested 0/1 lists or mask file path)"},
            },
            "required": ["pred", "gt"],
        }

    def execute(self, pred: BinaryMask, gt: BinaryMask) -> ConfusionCounts:
        """Pure function: mask × mask → counts"""
        same_grid(pred, gt)
        p, g = pred.bits, gt.bits
        return ConfusionCounts(
            tp=int(np.count_nonzero(p & g)),
            fp=int(np.count_nonzero(p & ~g)),
            tn=int(np.count_nonzero(~p & ~g)),
            fn=int(np.count_nonzero(~p & g)),
        )

    def execute_json(self, arguments: dict) -> ConfusionCounts:
        pred = self.to_mask(self.argument(arguments, "pred"))
        gt = self.to_mask(self.argument(arguments, "gt"))
        return self.execute(pred, gt)
