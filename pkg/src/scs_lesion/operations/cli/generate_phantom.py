from typing import Optional, Tuple
import logging
import numpy as np
from PIL import Image, ImageDraw
from pydantic import BaseModel, Field
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, RgbImage

SKIN = (210, 180, 160)
LESION = (80, 50, 45)
HAIR = (40, 30, 25)
BUBBLE = (245, 245, 245)


class PhantomSpec(BaseModel):
    """Geometry and artifacts of one synthetic lesion image."""

    size: int = Field(600, ge=32)
    skin: Tuple[int, int, int] = SKIN
    lesion: Tuple[int, int, int] = LESION
    # ellipse centre (row, col) and semi-axes (horizontal, vertical) in pixels
    center: Optional[Tuple[float, float]] = None
    axes: Tuple[float, float] = (150.0, 100.0)
    angle: float = 0.0
    hair: int = Field(0, ge=0)
    vignette: bool = False
    bubbles: int = Field(0, ge=0)
    noise: float = Field(4.0, ge=0)


def ellipse_mask(spec: PhantomSpec) -> np.ndarray:
    size = spec.size
    cy, cx = spec.center or ((size - 1) / 2.0, (size - 1) / 2.0)
    rows, cols = np.mgrid[:size, :size].astype(np.float64)
    cos, sin = np.cos(spec.angle), np.sin(spec.angle)
    u = (cols - cx) * cos + (rows - cy) * sin
    v = -(cols - cx) * sin + (rows - cy) * cos
    return (u / spec.axes[0]) ** 2 + (v / spec.axes[1]) ** 2 <= 1.0


def vignette_gain(size: int) -> np.ndarray:
    """Radial darkening that only reaches the corners."""
    rows, cols = np.mgrid[:size, :size].astype(np.float64)
    centre = (size - 1) / 2.0
    radius = np.hypot(rows - centre, cols - centre) / size
    ramp = np.clip((radius - 0.55) / (0.71 - 0.55), 0.0, 1.0)
    return 1.0 - 0.85 * ramp**2


def draw_phantom(spec: PhantomSpec, rng: np.random.Generator) -> Tuple[RgbImage, BinaryMask]:
    size = spec.size
    lesion = ellipse_mask(spec)
    data = np.empty((size, size, 3), dtype=np.float64)
    data[...] = spec.skin
    data[lesion] = spec.lesion
    if spec.vignette:
        data *= vignette_gain(size)[..., None]

    canvas = Image.fromarray(np.clip(np.rint(data), 0, 255).astype(np.uint8))
    draw = ImageDraw.Draw(canvas)
    for _ in range(spec.hair):
        start = rng.uniform(0, size, 2)
        heading = rng.uniform(0, np.pi)
        length = rng.uniform(0.15, 0.4) * size
        end = start + length * np.array([np.cos(heading), np.sin(heading)])
        shade = tuple(int(c + rng.integers(-10, 11)) for c in HAIR)
        draw.line([tuple(start), tuple(end)], fill=shade, width=int(rng.integers(1, 4)))
    for _ in range(spec.bubbles):
        cx, cy = rng.uniform(0, size, 2)
        r = rng.uniform(8, 20)
        draw.ellipse([cx - r, cy - r, cx + r, cy + r], outline=BUBBLE, width=2)

    data = np.asarray(canvas, dtype=np.float64)
    if spec.noise > 0:
        data = data + rng.normal(0.0, spec.noise, data.shape)
    return RgbImage(data=np.clip(np.rint(data), 0, 255)), BinaryMask(bits=lesion)


def random_spec(
    rng: np.random.Generator, size: int, hair: int, vignette: bool, bubbles: int
) -> PhantomSpec:
    jitter = rng.uniform(-0.08, 0.08, 2) * size
    return PhantomSpec(
        size=size,
        skin=tuple(int(c + rng.integers(-15, 16)) for c in SKIN),
        lesion=tuple(int(c + rng.integers(-20, 21)) for c in LESION),
        center=tuple(float(v) for v in (size - 1) / 2.0 + jitter),
        axes=(float(rng.uniform(0.17, 0.27) * size), float(rng.uniform(0.12, 0.2) * size)),
        angle=float(rng.uniform(0, np.pi)),
        hair=hair,
        vignette=vignette,
        bubbles=bubbles,
    )


class GeneratePhantom(Operation):
    """
    Synthetic dermoscopic lesion with exact ground truth
    """

    @classmethod
    def description(cls) -> str:
        return """Draws a dark elliptical lesion on a light skin field with Gaussian
        noise and optional dark hair strokes, corner vignette and light
        bubbles. The generating ellipse is returned as the ground-truth mask.
        Identical seeds give identical images."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "seed": {"type": "integer"},
                "size": {"type": "integer", "minimum": 32},
                "hair": {"type": "integer", "minimum": 0},
                "vignette": {"type": "boolean"},
                "bubbles": {"type": "integer", "minimum": 0},
            },
            "required": ["seed"],
        }

    def execute(
        self, seed: int, size: int = 600, hair: int = 30, vignette: bool = True, bubbles: int = 0
    ) -> Tuple[RgbImage, BinaryMask]:
        """Pure function: seed → (image, ground truth)"""
        rng = np.random.default_rng(seed)
        spec = random_spec(rng, size, hair, vignette, bubbles)
        logging.debug("Phantom %d: %s", seed, spec)
        return draw_phantom(spec, rng)

    def execute_json(self, arguments: dict) -> dict:
        seed = self.argument(arguments, "seed")
        if not isinstance(seed, int):
            raise TypeError(f"GeneratePhantom operation expects 'seed' to be int, got {type(seed)}")
        image, gt = self.execute(
            seed,
            self.argument(arguments, "size", 600),
            self.argument(arguments, "hair", 30),
            self.argument(arguments, "vignette", True),
            self.argument(arguments, "bubbles", 0),
        )
        return {"image": image, "gt": gt}
