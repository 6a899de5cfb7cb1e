from typing import Iterable, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scs_lesion.errors import InvalidInputError

Color = Tuple[float, float, float]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


class Raster(BaseModel):
    """Common base for immutable row-major rasters backed by a numpy array."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def array(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def height(self) -> int:
        return int(self.array.shape[0])

    @property
    def width(self) -> int:
        return int(self.array.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    @property
    def minsize(self) -> int:
        return min(self.height, self.width)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Raster):
            return NotImplemented
        return np.array_equal(self.array, other.array)

    __hash__ = None


class RgbImage(Raster):
    """8-bit three-channel image; `data` has shape (height, width, 3)."""

    data: np.ndarray

    @field_validator("data", mode="before")
    @classmethod
    def _check_data(cls, value) -> np.ndarray:
        array = np.asarray(value)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"RgbImage expects a (height, width, 3) array, got shape {array.shape}")
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("RgbImage needs width >= 1 and height >= 1")
        if array.dtype != np.uint8:
            if np.issubdtype(array.dtype, np.floating):
                array = np.rint(array)
            array = np.clip(array, 0, 255).astype(np.uint8)
        return _frozen(array)

    @property
    def array(self) -> np.ndarray:
        return self.data

    @classmethod
    def filled(cls, width: int, height: int, color: Iterable[int]) -> "RgbImage":
        data = np.empty((height, width, 3), dtype=np.uint8)
        data[...] = np.asarray(tuple(color), dtype=np.uint8)
        return cls(data=data)

    def pixels(self) -> np.ndarray:
        """Flat (N, 3) view of the channel triples."""
        return self.data.reshape(-1, 3)

    def distinct_colors(self) -> np.ndarray:
        return np.unique(self.pixels(), axis=0)

    def luma(self) -> np.ndarray:
        """ITU-R 601 luma, float (height, width)."""
        rgb = self.data.astype(np.float64)
        return 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]


class SaliencyMap(Raster):
    """Per-pixel saliency on [0, 255]."""

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value) -> np.ndarray:
        array = np.asarray(value, dtype=np.float64)
        if array.ndim != 2:
            raise ValueError(f"SaliencyMap expects a 2-D array, got shape {array.shape}")
        if array.size and (array.min() < 0 or array.max() > 255):
            raise ValueError("SaliencyMap values must lie on [0, 255]")
        return _frozen(array)

    @property
    def array(self) -> np.ndarray:
        return self.values


class BinaryMask(Raster):
    """Boolean foreground/background raster; True marks BM_f."""

    bits: np.ndarray

    @field_validator("bits", mode="before")
    @classmethod
    def _check_bits(cls, value) -> np.ndarray:
        array = np.asarray(value)
        if array.ndim != 2:
            raise ValueError(f"BinaryMask expects a 2-D array, got shape {array.shape}")
        return _frozen(array.astype(bool))

    @property
    def array(self) -> np.ndarray:
        return self.bits

    @classmethod
    def empty(cls, width: int, height: int) -> "BinaryMask":
        return cls(bits=np.zeros((height, width), dtype=bool))

    @classmethod
    def from_pixels(cls, pixels: np.ndarray, width: int, height: int) -> "BinaryMask":
        bits = np.zeros((height, width), dtype=bool)
        pixels = np.asarray(pixels, dtype=np.intp).reshape(-1, 2)
        if len(pixels):
            bits[pixels[:, 0], pixels[:, 1]] = True
        return cls(bits=bits)

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    def is_empty(self) -> bool:
        return not self.bits.any()

    def coordinates(self) -> np.ndarray:
        """(N, 2) array of (row, col) of the foreground pixels, raster order."""
        return np.argwhere(self.bits)

    def with_bits(self, bits: np.ndarray) -> "BinaryMask":
        return type(self)(bits=bits)

    def union(self, other: "BinaryMask") -> "BinaryMask":
        same_grid(self, other)
        return self.with_bits(self.bits | other.bits)

    def difference(self, other: "BinaryMask") -> "BinaryMask":
        same_grid(self, other)
        return self.with_bits(self.bits & ~other.bits)

    def invert(self) -> "BinaryMask":
        return self.with_bits(~self.bits)


class HairMask(BinaryMask):
    """Pixels classified as hair strokes."""


class PixelRegion(BaseModel):
    """One connected component of a mask polarity, with cached statistics."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: int
    pixels: np.ndarray
    area: int
    touches_frame: bool
    mean_color: Optional[Color] = None
    mean_saliency: Optional[float] = None

    @field_validator("pixels", mode="before")
    @classmethod
    def _check_pixels(cls, value) -> np.ndarray:
        array = np.asarray(value, dtype=np.intp).reshape(-1, 2)
        return _frozen(array)

    @model_validator(mode="after")
    def _check_area(self) -> "PixelRegion":
        if self.area != len(self.pixels) or self.area < 1:
            raise ValueError(
                f"PixelRegion area {self.area} disagrees with {len(self.pixels)} member pixels"
            )
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PixelRegion):
            return NotImplemented
        return self.area == other.area and np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    def top_left(self) -> Tuple[int, int]:
        """Minimal (row, col) member pixel."""
        order = np.lexsort((self.pixels[:, 1], self.pixels[:, 0]))
        row, col = self.pixels[order[0]]
        return int(row), int(col)

    def to_mask(self, width: int, height: int) -> BinaryMask:
        return BinaryMask.from_pixels(self.pixels, width, height)


class Palette(BaseModel):
    """Ordered list of distinct 8-bit RGB colors."""

    model_config = ConfigDict(frozen=True)

    colors: List[Tuple[int, int, int]]

    @field_validator("colors")
    @classmethod
    def _check_colors(cls, value: List[Tuple[int, int, int]]) -> List[Tuple[int, int, int]]:
        if not value:
            raise ValueError("Palette needs at least one color")
        if len(set(value)) != len(value):
            raise ValueError("Palette colors must be distinct")
        return value

    def __len__(self) -> int:
        return len(self.colors)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.colors, dtype=np.float64)


def same_grid(first: Raster, second: Raster) -> None:
    if first.shape != second.shape:
        raise InvalidInputError(
            f"Grid mismatch: {first.width}x{first.height} vs {second.width}x{second.height}"
        )
