"""RenderOverlay: RgbImage × pred × gt → RgbImage (TP white, FP red, FN green, TN unchanged)"""

from __future__ import annotations

import numpy as np
import pytest

from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask, RgbImage

from tests.conftest import filled

GRAY = (90, 90, 90)


def quadrants():
    gt = np.zeros((10, 10), dtype=bool)
    gt[:, :5] = True
    pred = np.zeros((10, 10), dtype=bool)
    pred[:5, :] = True
    return BinaryMask(bits=pred), BinaryMask(bits=gt)


class TestRenderOverlayPure:
    def test_perfect_prediction(self, settings):
        op = Operation.get("RenderOverlay")(settings=settings)
        pred, gt = quadrants()
        out = op.execute(filled(10, 10, GRAY), gt, gt)
        assert (out.data[gt.bits] == 255).all()
        assert (out.data[~gt.bits] == 90).all()

    def test_empty_prediction_paints_ground_truth_green(self, settings):
        op = Operation.get("RenderOverlay")(settings=settings)
        _, gt = quadrants()
        out = op.execute(filled(10, 10, GRAY), BinaryMask.empty(10, 10), gt)
        assert (out.data[gt.bits] == (0, 255, 0)).all()

    def test_quadrant_centres(self, settings):
        op = Operation.get("RenderOverlay")(settings=settings)
        out = op.execute(filled(10, 10, GRAY), *quadrants())
        assert tuple(out.data[2, 2]) == (255, 255, 255)
        assert tuple(out.data[2, 7]) == (255, 0, 0)
        assert tuple(out.data[7, 2]) == (0, 255, 0)
        assert tuple(out.data[7, 7]) == GRAY

    def test_grid_mismatch(self, settings):
        op = Operation.get("RenderOverlay")(settings=settings)
        with pytest.raises(InvalidInputError):
            op.execute(filled(10, 9), *quadrants())


class TestRenderOverlayJson:
    def test_nested_lists(self, settings):
        op = Operation.get("RenderOverlay")(settings=settings)
        out = op.execute_json(
            {"image": [[[9, 9, 9], [9, 9, 9]]], "pred": [[1, 0]], "gt": [[1, 1]]}
        )
        assert out.data.tolist() == [[[255, 255, 255], [0, 255, 0]]]
