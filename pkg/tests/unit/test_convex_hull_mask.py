"""ConvexHullMask: pixel set × width × height → BinaryMask
The rasterized hull contains every input pixel and is a fixed point of itself.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.spatial import Delaunay

from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.operations.core.convex_hull_mask import hull_vertices, rasterize_polygon

from tests.conftest import mask_of


def brute_force_hull(pixels: np.ndarray, width: int, height: int) -> np.ndarray:
    """Point-in-hull test for every pixel centre via a Delaunay triangulation."""
    grid = np.argwhere(np.ones((height, width), dtype=bool)).astype(float)
    triangulation = Delaunay(pixels.astype(float))
    return (triangulation.find_simplex(grid, tol=1e-9) >= 0).reshape(height, width)


class TestConvexHullMaskPure:
    def test_single_pixel(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        mask = op.execute(np.array([[2, 2]]), 5, 5)
        assert mask.coordinates().tolist() == [[2, 2]]

    def test_filled_square_is_fixed_point(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        square = mask_of([".....", ".###.", ".###.", ".###.", "....."])
        assert op.execute(square.coordinates(), 5, 5) == square

    def test_right_triangle_has_15_pixels(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        pixels = np.array([[0, 0], [0, 4], [4, 0]])
        mask = op.execute(pixels, 5, 5)
        assert mask.count == 15
        assert np.array_equal(mask.bits, brute_force_hull(pixels, 5, 5))

    def test_segment_hull(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        mask = op.execute(np.array([[0, 0], [4, 4]]), 5, 5)
        assert mask.coordinates().tolist() == [[i, i] for i in range(5)]

    def test_matches_brute_force_on_random_sets(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        rng = np.random.default_rng(11)
        for _ in range(40):
            pixels = np.unique(rng.integers(0, 16, size=(rng.integers(3, 12), 2)), axis=0)
            if np.linalg.matrix_rank(pixels - pixels[0]) < 2:
                continue
            mask = op.execute(pixels, 16, 16)
            assert np.array_equal(mask.bits, brute_force_hull(pixels, 16, 16))

    def test_idempotent_and_covers_input(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        rng = np.random.default_rng(12)
        for _ in range(25):
            pixels = rng.integers(0, 20, size=(8, 2))
            once = op.execute(pixels, 20, 20)
            assert once.bits[pixels[:, 0], pixels[:, 1]].all()
            assert op.execute(once.coordinates(), 20, 20) == once
            assert op.area(pixels, 20, 20) == once.count >= len(np.unique(pixels, axis=0))

    def test_scaled_vertices_clip_to_grid(self):
        vertices = hull_vertices(np.array([[-2.0, -2.0], [-2.0, 10.0], [10.0, -2.0]]))
        bits = rasterize_polygon(vertices, 4, 4)
        assert bits.shape == (4, 4) and bits.all()

    def test_empty_pixel_set_raises(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        with pytest.raises(InvalidInputError):
            op.execute(np.empty((0, 2), dtype=int), 5, 5)


class TestConvexHullMaskJson:
    def test_pixels_as_lists(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        mask = op.execute_json({"pixels": [[0, 0], [0, 2], [2, 0], [2, 2]], "width": 3, "height": 3})
        assert mask.count == 9

    def test_non_int_width_raises_type_error(self, settings):
        op = Operation.get("ConvexHullMask")(settings=settings)
        with pytest.raises(TypeError):
            op.execute_json({"pixels": [[0, 0]], "width": "3", "height": 3})
