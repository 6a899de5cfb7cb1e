import logging
import numpy as np
from scs_lesion.model import KernelPartition
from scs_lesion.operation import Operation
from scs_lesion.operations.core.convex_hull_mask import hull_vertices, polygon_area
from scs_lesion.operations.core.label_components import LabelComponents
from scs_lesion.raster import BinaryMask, SaliencyMap, same_grid


class PartitionKernelPeripheral(Operation):
    """
    Splits foreground regions into kernel and peripheral components
    """

    @classmethod
    def description(cls) -> str:
        return """A foreground region with fewer than T_n pixels of saliency above
        2 * mu_s is peripheral, every other region belongs to the kernel. When
        no region qualifies as kernel, the largest one is promoted."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask"},
                "sm": {"description": "Saliency map on the same grid"},
                "mu_s": {"type": "number", "description": "Final binarization threshold"},
            },
            "required": ["mask", "sm", "mu_s"],
        }

    def execute(self, mask: BinaryMask, sm: SaliencyMap, mu_s: float) -> KernelPartition:
        """Pure function: mask × saliency × mu_s → partition"""
        same_grid(mask, sm)
        regions = LabelComponents(settings=self.settings).execute(mask)
        cutoff = 2.0 * mu_s
        kernel, peripheral = [], []
        for region in regions:
            strong = int((sm.values[region.pixels[:, 0], region.pixels[:, 1]] > cutoff).sum())
            (peripheral if strong < self.settings.tn else kernel).append(region)

        if not kernel and peripheral:
            # raster order: the first maximum is the topmost-leftmost
            largest = max(range(len(peripheral)), key=lambda i: (peripheral[i].area, -i))
            kernel.append(peripheral.pop(largest))
            logging.info("No kernel component; promoted region of area %d", kernel[0].area)

        kernel_area = sum(region.area for region in kernel)
        hull_area = 0
        if kernel:
            pixels = np.concatenate([region.pixels for region in kernel])
            hull_area = polygon_area(hull_vertices(pixels), mask.width, mask.height)

        logging.debug(
            "Partition: %d kernel (area %d, hull %d), %d peripheral",
            len(kernel), kernel_area, hull_area, len(peripheral),
        )
        return KernelPartition(
            kernel=kernel,
            peripheral=peripheral,
            kernel_area=kernel_area,
            kernel_hull_area=hull_area,
            width=mask.width,
            height=mask.height,
        )

    def execute_json(self, arguments: dict) -> KernelPartition:
        mask = self.to_mask(self.argument(arguments, "mask"))
        sm = self.to_saliency(self.argument(arguments, "sm"))
        mu_s = self.argument(arguments, "mu_s")
        if not isinstance(mu_s, (int, float)):
            raise TypeError(
                f"PartitionKernelPeripheral operation expects 'mu_s' to be number, got {type(mu_s)}"
            )
        return self.execute(mask, sm, float(mu_s))
