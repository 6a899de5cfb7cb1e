"""QuantizeColors: RgbImage × colnum → (RgbImage, Palette) with |palette| <= colnum"""

from __future__ import annotations

import numpy as np
import pytest

from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.operations.preprocess.quantize_colors import (
    MedianCutQuantizer,
    SelfOrganizingQuantizer,
    nearest_palette,
)
from scs_lesion.params import ScsParams
from scs_lesion.raster import RgbImage


def noise(size: int, seed: int = 0) -> RgbImage:
    rng = np.random.default_rng(seed)
    return RgbImage(data=rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8))


def gradient(width: int = 128, height: int = 32) -> RgbImage:
    ramp = np.linspace(0, 255, width)
    data = np.stack(
        [np.tile(ramp, (height, 1)), np.tile(ramp[::-1], (height, 1)), np.full((height, width), 90.0)],
        axis=2,
    )
    return RgbImage(data=data)


def mean_error(original: RgbImage, quantized: RgbImage) -> float:
    diff = original.data.astype(float) - quantized.data.astype(float)
    return float(np.linalg.norm(diff, axis=2).mean())


class TestNearestPalette:
    def test_first_index_wins_ties(self):
        palette = np.array([[0, 0, 0], [20, 0, 0]], dtype=float)
        assert nearest_palette(np.array([[10, 0, 0]]), palette).tolist() == [0]

    def test_matches_argmin(self):
        rng = np.random.default_rng(3)
        colors = rng.integers(0, 256, size=(500, 3))
        palette = rng.integers(0, 256, size=(7, 3))
        expected = [
            int(np.argmin(((palette - c) ** 2).sum(axis=1))) for c in colors.astype(float)
        ]
        assert nearest_palette(colors, palette).tolist() == expected


class TestQuantizersPure:
    def test_som_returns_colnum_neurons(self):
        samples = np.random.default_rng(0).integers(0, 256, size=(300, 3)).astype(float)
        weights = SelfOrganizingQuantizer(cycles=1).fit(samples, 8)
        assert weights.shape == (8, 3)
        assert weights.min() >= 0 and weights.max() <= 255

    def test_median_cut_stops_on_uniform_box(self):
        samples = np.tile([[5.0, 6.0, 7.0]], (50, 1))
        assert MedianCutQuantizer().fit(samples, 16).tolist() == [[5.0, 6.0, 7.0]]


class TestQuantizeColorsPure:
    def test_few_colors_pass_through(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        data = np.zeros((10, 10, 3), dtype=np.uint8)
        data[:, 3:] = (255, 0, 0)
        data[:, 7:] = (0, 0, 255)
        image = RgbImage(data=data)
        quantized, palette = op.execute(image)
        assert quantized is image
        assert sorted(palette.colors) == [(0, 0, 0), (0, 0, 255), (255, 0, 0)]

    def test_palette_budget(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        quantized, palette = op.execute(noise(64))
        assert len(palette) <= 64
        assert len(quantized.distinct_colors()) == len(palette)

    def test_every_pixel_maps_to_its_nearest_palette_color(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        image = noise(100, seed=11)
        quantized, palette = op.execute(image, 8)
        colors = palette.as_array()
        pixels = image.pixels().astype(float)
        chosen = quantized.pixels().astype(float)
        best = np.sqrt(((pixels[:, None, :] - colors[None, :, :]) ** 2).sum(axis=2)).min(axis=1)
        assert np.allclose(np.linalg.norm(pixels - chosen, axis=1), best)

    def test_more_colors_fit_better(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        image = gradient()
        coarse = mean_error(image, op.execute(image, 8)[0])
        fine = mean_error(image, op.execute(image, 64)[0])
        assert fine < coarse

    def test_deterministic_for_seed(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        image = noise(48, seed=2)
        assert op.execute(image, 16) == op.execute(image, 16)

    def test_median_cut(self):
        op = Operation.get("QuantizeColors")(settings=ScsParams(quantizer="median_cut"))
        quantized, palette = op.execute(gradient(), 16)
        assert 1 < len(palette) <= 16
        assert mean_error(gradient(), quantized) < 20

    def test_colnum_too_small_raises(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        with pytest.raises(InvalidInputError):
            op.execute(noise(8), 1)

    def test_unknown_method_raises(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        with pytest.raises(InvalidInputError, match="Unknown quantizer"):
            op.execute(noise(8), 4, "octree")


class TestQuantizeColorsJson:
    def test_nested_lists(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        quantized, palette = op.execute_json({"image": noise(16).data.tolist(), "colnum": 4})
        assert len(palette) <= 4
        assert quantized.shape == (16, 16)

    def test_colnum_type_mismatch(self, settings):
        op = Operation.get("QuantizeColors")(settings=settings)
        with pytest.raises(TypeError, match="'colnum' to be int"):
            op.execute_json({"image": noise(8).data.tolist(), "colnum": 4.0})
