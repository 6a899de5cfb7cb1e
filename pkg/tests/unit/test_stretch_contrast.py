"""StretchContrast: SaliencyMap → SaliencyMap (1%/99% saturation, affine in between)"""

from __future__ import annotations

import numpy as np
import pytest

from scs_lesion.operation import Operation
from scs_lesion.operations.preprocess.stretch_contrast import saturation_points

from tests.conftest import saliency_of


def ramp() -> np.ndarray:
    return np.arange(256, dtype=float).reshape(16, 16)


class TestSaturationPoints:
    def test_nearest_rank(self):
        assert saturation_points(ramp()) == (2.0, 253.0)


class TestStretchContrastPure:
    def test_constant_map_gives_zeros(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        out = op.execute(saliency_of(np.full((10, 10), 77.0)))
        assert not out.values.any()

    def test_ramp_saturates_tails(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        out = op.execute(saliency_of(ramp())).values.ravel()
        assert out[:3].tolist() == [0.0, 0.0, 0.0]
        assert out[253:].tolist() == [255.0, 255.0, 255.0]
        assert out[100] == pytest.approx(98 / 251 * 255)

    def test_idempotent_on_ramp(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        once = op.execute(saliency_of(ramp()))
        assert np.allclose(op.execute(once).values, once.values)

    def test_monotone(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        values = np.random.default_rng(9).uniform(0, 200, size=(30, 30))
        out = op.execute(saliency_of(values)).values.ravel()
        order = np.argsort(values.ravel())
        assert (np.diff(out[order]) >= 0).all()

    def test_range(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        values = np.random.default_rng(1).uniform(40, 60, size=(20, 20))
        out = op.execute(saliency_of(values)).values
        assert out.min() == 0.0 and out.max() == 255.0

    def test_wrong_type_raises(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        with pytest.raises(TypeError, match="SaliencyMap"):
            op.execute(ramp())


class TestStretchContrastJson:
    def test_nested_lists(self, settings):
        op = Operation.get("StretchContrast")(settings=settings)
        out = op.execute_json({"sm": ramp().tolist()})
        assert out.values.max() == 255.0
