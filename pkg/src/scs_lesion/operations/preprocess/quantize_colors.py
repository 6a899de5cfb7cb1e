from abc import ABC, abstractmethod
from typing import Dict, Tuple, Type
import logging
import numpy as np
from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import Palette, RgbImage

# (unique colors x palette) float distances computed per chunk
_CHUNK = 32768


class Quantizer(ABC):
    """Strategy producing at most `colnum` representative colors from pixel samples."""

    @abstractmethod
    def fit(self, samples: np.ndarray, colnum: int) -> np.ndarray:
        pass


class SelfOrganizingQuantizer(Quantizer):
    """
    One-dimensional Kohonen map over sampled pixels.

    Neurons start on the gray diagonal; learning rate and neighbourhood radius
    decay linearly over `cycles` passes through the shuffled samples.
    """

    def __init__(self, cycles: int = 2, alpha: float = 0.3):
        self.cycles = cycles
        self.alpha = alpha

    def fit(self, samples: np.ndarray, colnum: int) -> np.ndarray:
        weights = np.repeat(np.linspace(0.0, 255.0, colnum)[:, None], 3, axis=1)
        positions = np.arange(colnum)
        total = self.cycles * len(samples)
        radius0 = max(1.0, colnum / 8.0)
        step = 0
        for _ in range(self.cycles):
            for x in samples:
                progress = step / total
                alpha = self.alpha * (1.0 - progress)
                radius = max(1.0, radius0 * (1.0 - progress))
                winner = int(np.argmin(((weights - x) ** 2).sum(axis=1)))
                reach = np.abs(positions - winner)
                near = reach < radius
                influence = alpha * (1.0 - (reach[near] / radius) ** 2)
                weights[near] += influence[:, None] * (x - weights[near])
                step += 1
        return weights


class MedianCutQuantizer(Quantizer):
    """Recursive split of the color box with the widest channel at its median."""

    def fit(self, samples: np.ndarray, colnum: int) -> np.ndarray:
        boxes = [samples]
        while len(boxes) < colnum:
            spans = [
                (np.ptp(box, axis=0).max() if len(box) > 1 else -1.0) for box in boxes
            ]
            index = int(np.argmax(spans))
            if spans[index] <= 0:
                break
            box = boxes.pop(index)
            channel = int(np.argmax(np.ptp(box, axis=0)))
            box = box[np.argsort(box[:, channel], kind="stable")]
            half = len(box) // 2
            boxes[index:index] = [box[:half], box[half:]]
        return np.array([box.mean(axis=0) for box in boxes])


QUANTIZERS: Dict[str, Type[Quantizer]] = {
    "som": SelfOrganizingQuantizer,
    "median_cut": MedianCutQuantizer,
}


def nearest_palette(colors: np.ndarray, palette: np.ndarray) -> np.ndarray:
    """Index of the RGB-nearest palette entry for every color; first index wins ties."""
    colors = colors.astype(np.float64)
    palette = palette.astype(np.float64)
    indices = np.empty(len(colors), dtype=np.intp)
    for start in range(0, len(colors), _CHUNK):
        chunk = colors[start : start + _CHUNK]
        d2 = ((chunk[:, None, :] - palette[None, :, :]) ** 2).sum(axis=2)
        indices[start : start + _CHUNK] = np.argmin(d2, axis=1)
    return indices


class QuantizeColors(Operation):
    """
    Reduces an image to at most colnum colors
    """

    @classmethod
    def description(cls) -> str:
        return """Color quantization: learns a palette of at most colnum colors (self-organizing
        map by default, median cut as alternative) and maps every pixel to its
        RGB-nearest palette color. Images already within budget pass through."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
                "colnum": {"type": "integer", "minimum": 2},
                "method": {"type": "string", "enum": list(QUANTIZERS)},
            },
            "required": ["image"],
        }

    def quantizer(self, method: str) -> Quantizer:
        if method not in QUANTIZERS:
            raise InvalidInputError(f"Unknown quantizer: {method}")
        if method == "som":
            return SelfOrganizingQuantizer(cycles=self.settings.som_cycles)
        return QUANTIZERS[method]()

    def execute(
        self, image: RgbImage, colnum: int = None, method: str = None
    ) -> Tuple[RgbImage, Palette]:
        """Pure function: image → (quantized image, palette)"""
        if not isinstance(image, RgbImage):
            raise TypeError(
                f"QuantizeColors expects image to be RgbImage, got {type(image).__name__}"
            )
        colnum = colnum or self.settings.colnum
        method = method or self.settings.quantizer
        if colnum < 2:
            raise InvalidInputError(f"colnum must be >= 2, got {colnum}")

        pixels = image.pixels()
        distinct, inverse = np.unique(pixels, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        if len(distinct) <= colnum:
            logging.info("Image has %d colors, within budget %d", len(distinct), colnum)
            return image, Palette(colors=[tuple(int(v) for v in c) for c in distinct])

        rng = np.random.default_rng(self.settings.seed)
        count = min(len(pixels), self.settings.som_samples)
        samples = pixels[rng.permutation(len(pixels))[:count]].astype(np.float64)
        learned = np.clip(np.rint(self.quantizer(method).fit(samples, colnum)), 0, 255)
        _, first = np.unique(learned, axis=0, return_index=True)
        learned = learned[np.sort(first)]

        mapping = nearest_palette(distinct, learned)
        used = np.unique(mapping)
        palette = learned[used].astype(np.uint8)
        remap = np.full(len(learned), -1, dtype=np.intp)
        remap[used] = np.arange(len(used))
        quantized = palette[remap[mapping][inverse]].reshape(image.data.shape)

        logging.info(
            "Quantized %d colors to %d with %s", len(distinct), len(palette), method
        )
        return (
            RgbImage(data=quantized),
            Palette(colors=[tuple(int(v) for v in c) for c in palette]),
        )

    def execute_json(self, arguments: dict) -> Tuple[RgbImage, Palette]:
        image = self.to_image(self.argument(arguments, "image"))
        colnum = self.argument(arguments, "colnum")
        if colnum is not None and not isinstance(colnum, int):
            raise TypeError(
                f"QuantizeColors operation expects 'colnum' to be int, got {type(colnum)}"
            )
        return self.execute(image, colnum, self.argument(arguments, "method"))
