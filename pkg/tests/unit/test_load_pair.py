"""LoadPair: SamplePair → (RgbImage, BinaryMask | None)"""

from __future__ import annotations

import numpy as np
import pytest
from PIL import Image

from scs_lesion.errors import LoadError
from scs_lesion.model import SamplePair
from scs_lesion.operation import Operation


def save(path, width, height, channels=3):
    shape = (height, width, 3) if channels == 3 else (height, width)
    Image.fromarray(np.full(shape, 255, dtype=np.uint8)).save(path)
    return path


class TestLoadPairPure:
    def test_with_ground_truth(self, settings, tmp_path):
        sample = SamplePair(
            id="s", image_path=save(tmp_path / "i.png", 6, 4), gt_path=save(tmp_path / "g.png", 6, 4, 1)
        )
        image, gt = Operation.get("LoadPair")(settings=settings).execute(sample)
        assert image.shape == gt.shape == (4, 6)
        assert gt.count == 24

    def test_without_ground_truth(self, settings, tmp_path):
        sample = SamplePair(id="s", image_path=save(tmp_path / "i.png", 6, 4))
        image, gt = Operation.get("LoadPair")(settings=settings).execute(sample)
        assert gt is None and image.shape == (4, 6)

    def test_dimension_mismatch(self, settings, tmp_path):
        sample = SamplePair(
            id="IMD042",
            image_path=save(tmp_path / "i.png", 6, 4),
            gt_path=save(tmp_path / "g.png", 5, 4, 1),
        )
        with pytest.raises(LoadError, match="IMD042: image is 6x4 but ground truth is 5x4"):
            Operation.get("LoadPair")(settings=settings).execute(sample)


class TestLoadPairJson:
    def test_arguments(self, settings, tmp_path):
        save(tmp_path / "i.png", 3, 3)
        image, gt = Operation.get("LoadPair")(settings=settings).execute_json(
            {"id": "s", "image_path": str(tmp_path / "i.png")}
        )
        assert gt is None and image.shape == (3, 3)
