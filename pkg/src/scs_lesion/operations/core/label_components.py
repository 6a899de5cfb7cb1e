from typing import List, Literal, Optional, Tuple
import logging
import numpy as np
from scipy import ndimage
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, PixelRegion, RgbImage, SaliencyMap, same_grid

Polarity = Literal["foreground", "background"]


def structure_for(connectivity: int) -> np.ndarray:
    if connectivity not in (4, 8):
        raise InvalidInputError(f"connectivity must be 4 or 8, got {connectivity}")
    return ndimage.generate_binary_structure(2, 1 if connectivity == 4 else 2)


def label_bits(bits: np.ndarray, connectivity: int) -> Tuple[np.ndarray, int]:
    """scipy labelling; labels follow raster order of each component's first pixel."""
    labels, count = ndimage.label(bits, structure=structure_for(connectivity))
    return labels, int(count)


def frame_labels(labels: np.ndarray) -> np.ndarray:
    """Sorted label ids (> 0) present on the outermost rows/columns."""
    border = np.concatenate((labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]))
    ids = np.unique(border)
    return ids[ids > 0]


def regions_from_labels(
    labels: np.ndarray,
    count: int,
    image: Optional[RgbImage] = None,
    sm: Optional[SaliencyMap] = None,
) -> List[PixelRegion]:
    if count == 0:
        return []
    flat = labels.ravel()
    order = np.argsort(flat, kind="stable")
    sizes = np.bincount(flat, minlength=count + 1)
    starts = np.concatenate(([0], np.cumsum(sizes)))
    width = labels.shape[1]
    on_frame = np.zeros(count + 1, dtype=bool)
    on_frame[frame_labels(labels)] = True

    colors = None
    if image is not None:
        rgb = image.pixels().astype(np.float64)
        colors = np.stack(
            [np.bincount(flat, weights=rgb[:, c], minlength=count + 1) for c in range(3)], axis=1
        )
    saliency = None
    if sm is not None:
        saliency = np.bincount(flat, weights=sm.values.ravel(), minlength=count + 1)

    regions = []
    for label in range(1, count + 1):
        members = order[starts[label] : starts[label + 1]]
        area = int(sizes[label])
        regions.append(
            PixelRegion(
                label=label,
                pixels=np.column_stack((members // width, members % width)),
                area=area,
                touches_frame=bool(on_frame[label]),
                mean_color=None if colors is None else tuple(float(v) for v in colors[label] / area),
                mean_saliency=None if saliency is None else float(saliency[label] / area),
            )
        )
    return regions


class LabelComponents(Operation):
    """
    Splits one polarity of a binary mask into connected components
    """

    @classmethod
    def description(cls) -> str:
        return """Labels the connected components (R_f or R_b) of a binary mask.

        Foreground defaults to the configured connectivity; background is usually
        labelled with 4-connectivity. Each region carries its area, whether it
        touches the image frame and, when an image / saliency map is supplied,
        its mean color and mean saliency."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "mask": {"description": "Binary mask (nested 0/1 lists or a mask file path)"},
                "connectivity": {"type": "integer", "enum": [4, 8]},
                "polarity": {"type": "string", "enum": ["foreground", "background"]},
                "image": {"description": "Optional RGB image for mean colors"},
            },
            "required": ["mask"],
        }

    def label(
        self, mask: BinaryMask, connectivity: int, polarity: Polarity = "foreground"
    ) -> Tuple[np.ndarray, int]:
        if mask.height == 0 or mask.width == 0:
            raise InvalidInputError("Cannot label a zero-sized mask")
        if polarity not in ("foreground", "background"):
            raise InvalidInputError(f"Unknown polarity: {polarity}")
        bits = mask.bits if polarity == "foreground" else ~mask.bits
        return label_bits(bits, connectivity)

    def execute(
        self,
        mask: BinaryMask,
        connectivity: Optional[int] = None,
        polarity: Polarity = "foreground",
        image: Optional[RgbImage] = None,
        sm: Optional[SaliencyMap] = None,
    ) -> List[PixelRegion]:
        """Pure function: mask → list of PixelRegion in raster order"""
        if not isinstance(mask, BinaryMask):
            raise TypeError(
                f"LabelComponents expects mask to be BinaryMask, got {type(mask).__name__}"
            )
        if image is not None:
            same_grid(mask, image)
        if sm is not None:
            same_grid(mask, sm)
        connectivity = connectivity or self.settings.connectivity

        labels, count = self.label(mask, connectivity, polarity)
        logging.debug("Labelled %d %s component(s)", count, polarity)
        return regions_from_labels(labels, count, image, sm)

    def execute_json(self, arguments: dict) -> List[PixelRegion]:
        """JSON execution: process arguments and delegate to execute()"""
        mask = self.to_mask(self.argument(arguments, "mask"))
        connectivity = self.argument(arguments, "connectivity")
        if connectivity is not None and not isinstance(connectivity, int):
            raise TypeError(
                f"LabelComponents operation expects 'connectivity' to be int, got {type(connectivity)}"
            )
        polarity = self.argument(arguments, "polarity", "foreground")
        image = self.argument(arguments, "image")
        return self.execute(
            mask, connectivity, polarity, None if image is None else self.to_image(image)
        )
