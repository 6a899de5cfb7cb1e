import logging
import numpy as np
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, HairMask, RgbImage, same_grid

# Opposite direction pairs: horizontal, vertical, and the two diagonals.
AXES = ((0, 1), (1, 0), (1, 1), (1, -1))


def nearest_clear(hair: np.ndarray, coords: np.ndarray, step: np.ndarray):
    """
    Walk from every hair pixel along `step` until the first non-hair pixel.

    Returns (distance, row, col) per pixel; distance 0 marks walks that left
    the grid before finding one.
    """
    height, width = hair.shape
    count = len(coords)
    distance = np.zeros(count, dtype=np.intp)
    found = np.zeros((count, 2), dtype=np.intp)
    pending = np.ones(count, dtype=bool)
    k = 0
    while pending.any():
        k += 1
        target = coords + k * step
        inside = (
            (target[:, 0] >= 0) & (target[:, 0] < height)
            & (target[:, 1] >= 0) & (target[:, 1] < width)
        )
        # walks that left the grid stay unresolved
        pending &= inside
        clear = np.zeros(count, dtype=bool)
        clear[pending] = ~hair[target[pending, 0], target[pending, 1]]
        distance[clear] = k
        found[clear] = target[clear]
        pending &= ~clear
    return distance, found


class RemoveHair(Operation):
    """
    Restores hair pixels from the surrounding skin
    """

    @classmethod
    def description(cls) -> str:
        return """Replaces every hair pixel by linear interpolation between the nearest
        non-hair pixels on either side, along the direction in which the hair
        crossing is shortest (i.e. across the stroke). Non-hair pixels are
        left unchanged."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "hair": {"description": "Hair mask on the same grid"},
            },
            "required": ["image", "hair"],
        }

    def execute(self, image: RgbImage, hair: BinaryMask) -> RgbImage:
        """Pure function: image × hair mask → restored image"""
        if not isinstance(image, RgbImage):
            raise TypeError(
                f"RemoveHair expects image to be RgbImage, got {type(image).__name__}"
            )
        if not isinstance(hair, BinaryMask):
            raise TypeError(
                f"RemoveHair expects hair to be HairMask, got {type(hair).__name__}"
            )
        same_grid(image, hair)
        if hair.is_empty():
            return image

        data = image.data.astype(np.float64)
        coords = hair.coordinates()
        count = len(coords)
        best_span = np.full(count, np.inf)
        restored = data[coords[:, 0], coords[:, 1]].copy()
        # pixels with no complete crossing fall back to the closest clear pixel
        closest = np.full(count, np.inf)
        fallback = restored.copy()

        for axis in AXES:
            step = np.asarray(axis)
            d1, p1 = nearest_clear(hair.bits, coords, step)
            d2, p2 = nearest_clear(hair.bits, coords, -step)
            c1 = data[p1[:, 0], p1[:, 1]]
            c2 = data[p2[:, 0], p2[:, 1]]

            for d, c in ((d1, c1), (d2, c2)):
                nearer = (d > 0) & (d < closest)
                closest[nearer] = d[nearer]
                fallback[nearer] = c[nearer]

            both = (d1 > 0) & (d2 > 0)
            span = np.where(both, d1 + d2, np.inf)
            better = span < best_span
            if better.any():
                w1 = d2[better] / span[better]
                w2 = d1[better] / span[better]
                restored[better] = w1[:, None] * c1[better] + w2[:, None] * c2[better]
                best_span[better] = span[better]

        lonely = ~np.isfinite(best_span) & np.isfinite(closest)
        restored[lonely] = fallback[lonely]

        out = image.data.copy()
        out[coords[:, 0], coords[:, 1]] = np.clip(np.rint(restored), 0, 255).astype(np.uint8)
        logging.info("Restored %d hair pixels", count)
        return RgbImage(data=out)

    def execute_json(self, arguments: dict) -> RgbImage:
        image = self.to_image(self.argument(arguments, "image"))
        hair = self.to_mask(self.argument(arguments, "hair"))
        return self.execute(image, HairMask(bits=hair.bits))
