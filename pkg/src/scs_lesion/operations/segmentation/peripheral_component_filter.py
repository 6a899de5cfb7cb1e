import logging
import numpy as np
from scs_lesion.model import KernelPartition
from scs_lesion.operation import Operation
from scs_lesion.operations.core.convex_hull_mask import hull_vertices, polygon_area
from scs_lesion.raster import BinaryMask, PixelRegion


def bridging_area(part: KernelPartition, kernel_hull: np.ndarray, region: PixelRegion) -> int:
    """AD = A[CH(KC, R_f)] - A[CH(KC)] - A[R_f], all as rasterized pixel counts."""
    joint = hull_vertices(np.concatenate((kernel_hull, region.pixels.astype(np.float64))))
    joint_area = polygon_area(joint, part.width, part.height)
    return joint_area - part.kernel_hull_area - region.area


class PeripheralComponentFilter(Operation):
    """
    Moves peripheral components that are small, oversized or far from the kernel to the background
    """

    @classmethod
    def description(cls) -> str:
        return """Peripheral component criterion. A peripheral region R_f is removed when
        A[R_f] < theta1 * minsize, or A[R_f] > A[KC], or A[R_f] < AD where AD is
        the extra hull area needed to bridge R_f to the kernel. The kernel and
        its hull stay fixed while each peripheral region is judged."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "part": {"description": "Kernel/peripheral partition"},
            },
            "required": ["part"],
        }

    def removes(self, part: KernelPartition, kernel_hull: np.ndarray, region: PixelRegion) -> bool:
        if region.area < self.settings.theta1 * part.minsize:
            return True
        if region.area > part.kernel_area:
            return True
        ad = bridging_area(part, kernel_hull, region)
        if self.settings.proximity_rule == "inverted":
            return region.area > ad
        return region.area < ad

    def execute(self, part: KernelPartition) -> BinaryMask:
        """Pure function: partition → filtered mask"""
        if not isinstance(part, KernelPartition):
            raise TypeError(
                f"PeripheralComponentFilter expects part to be KernelPartition, got {type(part).__name__}"
            )
        if not part.kernel:
            return part.to_mask()

        kernel_hull = hull_vertices(part.kernel_pixels())
        survivors = [r for r in part.peripheral if not self.removes(part, kernel_hull, r)]
        logging.info(
            "Peripheral filter kept %d of %d peripheral region(s)",
            len(survivors), len(part.peripheral),
        )
        return KernelPartition(
            kernel=part.kernel,
            peripheral=survivors,
            kernel_area=part.kernel_area,
            kernel_hull_area=part.kernel_hull_area,
            width=part.width,
            height=part.height,
        ).to_mask()

    def execute_json(self, arguments: dict) -> BinaryMask:
        part = self.argument(arguments, "part")
        if not isinstance(part, KernelPartition):
            raise TypeError(
                f"PeripheralComponentFilter operation expects 'part' to be KernelPartition, got {type(part)}"
            )
        return self.execute(part)
