from typing import Callable, Dict, List, Tuple
import logging
import time
import numpy as np
from PIL import Image
from scs_lesion.errors import InvalidInputError
from scs_lesion.model import LesionResult
from scs_lesion.operation import Operation
from scs_lesion.operations.core.convex_hull_mask import hull_vertices, rasterize_polygon
from scs_lesion.operations.core.label_components import LabelComponents
from scs_lesion.operations.preprocess.compute_saliency_ft import ComputeSaliencyFt
from scs_lesion.operations.preprocess.detect_hair import DetectHair
from scs_lesion.operations.preprocess.quantize_colors import QuantizeColors
from scs_lesion.operations.preprocess.remove_hair import RemoveHair
from scs_lesion.operations.preprocess.resize_max_dim import ResizeMaxDim
from scs_lesion.operations.preprocess.stretch_contrast import StretchContrast
from scs_lesion.operations.segmentation.binarize_iterative import BinarizeIterative
from scs_lesion.operations.segmentation.color_proximity_filter import ColorProximityFilter
from scs_lesion.operations.segmentation.expand_foreground import ExpandForeground
from scs_lesion.operations.segmentation.finalize_lesion import FinalizeLesion
from scs_lesion.operations.segmentation.partition_kernel_peripheral import (
    PartitionKernelPeripheral,
)
from scs_lesion.operations.segmentation.peripheral_component_filter import (
    PeripheralComponentFilter,
)
from scs_lesion.raster import BinaryMask, RgbImage

MIN_SIDE = 16


def scale_vertices(
    vertices: np.ndarray, reduced: Tuple[int, int], full: Tuple[int, int]
) -> np.ndarray:
    """Map (row, col) pixel centres from the reduced grid onto the full grid."""
    factors = np.array([full[0] / reduced[0], full[1] / reduced[1]])
    return (vertices + 0.5) * factors - 0.5


def upsample_nearest(mask: BinaryMask, width: int, height: int) -> BinaryMask:
    if mask.shape == (height, width):
        return mask
    image = Image.fromarray(mask.bits.astype(np.uint8) * 255)
    resized = np.asarray(image.resize((width, height), Image.Resampling.NEAREST))
    return BinaryMask(bits=resized > 127)


class Segment(Operation):
    """
    Full lesion segmentation pipeline
    """

    @classmethod
    def description(cls) -> str:
        return """Segments the skin lesion of a dermoscopic image: resize, color
        quantization, hair removal, frequency-tuned saliency with contrast
        stretch, iterated binarization, color proximity and peripheral
        component criteria, foreground expansion and lesion finalization.
        A criterion stage that would empty the mask is skipped. The final
        hull is re-rasterized at the input resolution."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "image": {"description": "RGB image (nested lists or file path)"},
            },
            "required": ["image"],
        }

    def prepare(self, image: RgbImage, timings: Dict[str, float]) -> RgbImage:
        settings = self.settings
        steps: List[Tuple[str, Callable[[RgbImage], RgbImage]]] = []
        if settings.reduce_size:
            steps.append(("resize", lambda im: ResizeMaxDim(settings=settings).execute(im)))
        quantize = ("quantize", lambda im: QuantizeColors(settings=settings).execute(im)[0])
        dehair = ("dehair", self.dehair)
        if settings.dehair and settings.dehair_before_quantize:
            steps.append(dehair)
        if settings.reduce_colors:
            steps.append(quantize)
        if settings.dehair and not settings.dehair_before_quantize:
            steps.append(dehair)

        for name, step in steps:
            started = time.perf_counter()
            image = step(image)
            timings[name] = time.perf_counter() - started
        return image

    def dehair(self, image: RgbImage) -> RgbImage:
        hair = DetectHair(settings=self.settings).execute(image)
        return RemoveHair(settings=self.settings).execute(image, hair)

    def guarded(
        self,
        name: str,
        mask: BinaryMask,
        stage: Callable[[BinaryMask], BinaryMask],
        result: Dict[str, object],
    ) -> BinaryMask:
        """Run one criterion stage; restore its input when it empties a non-empty mask."""
        started = time.perf_counter()
        output = stage(mask)
        result["timings"][name] = time.perf_counter() - started
        if output.is_empty() and not mask.is_empty():
            logging.warning("Stage %s emptied the mask; skipping it", name)
            result["skipped_stages"].append(name)
            output = mask
        result["trace"][name] = output
        return output

    def full_resolution(
        self, mask: BinaryMask, reduced: RgbImage, original: RgbImage
    ) -> Tuple[BinaryMask, List[np.ndarray]]:
        if not self.settings.compute_hull or mask.is_empty():
            return upsample_nearest(mask, original.width, original.height), []

        regions = LabelComponents(settings=self.settings).execute(mask)
        bits = np.zeros(original.shape, dtype=bool)
        boundary = []
        for region in regions:
            vertices = scale_vertices(hull_vertices(region.pixels), reduced.shape, original.shape)
            bits |= rasterize_polygon(vertices, original.width, original.height)
            boundary.append(vertices)
        return BinaryMask(bits=bits), boundary

    def execute(self, image: RgbImage) -> LesionResult:
        """Pure function: image → lesion result"""
        if not isinstance(image, RgbImage):
            raise TypeError(f"Segment expects image to be RgbImage, got {type(image).__name__}")
        if image.width < MIN_SIDE or image.height < MIN_SIDE:
            raise InvalidInputError(
                f"Image {image.width}x{image.height} is too small to segment (minimum {MIN_SIDE})"
            )
        settings = self.settings
        result: Dict[str, object] = {"timings": {}, "trace": {}, "skipped_stages": []}
        timings = result["timings"]

        work = self.prepare(image, timings)

        started = time.perf_counter()
        sm = StretchContrast(settings=settings).execute(
            ComputeSaliencyFt(settings=settings).execute(work)
        )
        timings["saliency"] = time.perf_counter() - started

        started = time.perf_counter()
        binarization = BinarizeIterative(settings=settings).execute(sm)
        timings["binarize"] = time.perf_counter() - started
        mask = binarization.final_mask
        mu_s = binarization.mu_s
        result["trace"]["binarize"] = mask

        mask = self.guarded(
            "color_proximity",
            mask,
            lambda m: ColorProximityFilter(settings=settings).execute(m, work),
            result,
        )
        mask = self.guarded(
            "peripheral",
            mask,
            lambda m: PeripheralComponentFilter(settings=settings).execute(
                PartitionKernelPeripheral(settings=settings).execute(m, sm, mu_s)
            ),
            result,
        )
        mask = self.guarded(
            "expand",
            mask,
            lambda m: ExpandForeground(settings=settings).execute(m, sm, work, mu_s),
            result,
        )

        started = time.perf_counter()
        final, low_confidence = FinalizeLesion(settings=settings).execute(mask)
        mask_full, boundary = self.full_resolution(final, work, image)
        timings["finalize"] = time.perf_counter() - started
        result["trace"]["finalize"] = final

        logging.info(
            "Segmented %dx%d image: %d lesion pixels%s",
            image.width, image.height, mask_full.count,
            " (low confidence)" if low_confidence else "",
        )
        return LesionResult(
            mask_reduced=final,
            mask_full=mask_full,
            boundary=boundary,
            low_confidence=low_confidence,
            thresholds=binarization.thresholds,
            **result,
        )

    def execute_json(self, arguments: dict) -> LesionResult:
        return self.execute(self.to_image(self.argument(arguments, "image")))
