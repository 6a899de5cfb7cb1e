"""ExpandForeground: BinaryMask × SaliencyMap × RgbImage → BinaryMask (transition band merged into the foreground)"""

from __future__ import annotations

from collections import deque

import numpy as np
import pytest

from scs_lesion.errors import InvalidInputError
from scs_lesion.operation import Operation
from scs_lesion.operations.core.color_distance import distances
from scs_lesion.params import ScsParams
from scs_lesion.raster import BinaryMask, RgbImage

from tests.conftest import saliency_of

OTHER = (80, 60)


def cutoff_scene():
    """Centre block ringed by a two-pixel candidate band whose mean is red 100."""
    bits = np.zeros((20, 20), dtype=bool)
    bits[8:12, 8:12] = True
    values = np.full((20, 20), 50.0)
    values[6:14, 6:14] = 0.0
    values[bits] = 200.0
    data = np.empty((20, 20, 3), dtype=np.uint8)
    data[...] = (150, *OTHER)
    data[6:14, 6:14] = (100, *OTHER)
    data[6, 6] = (145, *OTHER)
    data[6, 13] = (55, *OTHER)
    data[13, 6] = (130, *OTHER)
    data[13, 13] = (70, *OTHER)
    data[bits] = (20, 20, 20)
    return BinaryMask(bits=bits), saliency_of(values), RgbImage(data=data)


def blob_scene(frame_blob: bool = False):
    bits = np.zeros((30, 30), dtype=bool)
    bits[10:15, 10:15] = True
    values = np.full((30, 30), 50.0)
    values[bits] = 200.0
    data = np.full((30, 30, 3), 200, dtype=np.uint8)
    data[bits] = (40, 40, 40)
    blobs = [(slice(7, 10), slice(7, 10)), (slice(20, 24), slice(20, 24))]
    if frame_blob:
        blobs.append((slice(0, 10), slice(15, 17)))
    for rows, cols in blobs:
        values[rows, cols] = 0.0
        data[rows, cols] = (100, 100, 100)
    return BinaryMask(bits=bits), saliency_of(values), RgbImage(data=data)


def flood_expand(mask, sm, image, settings) -> np.ndarray:
    """Reference expansion by breadth-first search from the foreground."""
    bits = mask.bits
    candidates = ~bits & (sm.values < settings.ts)
    rest = ~bits & ~candidates
    if not candidates.any() or not rest.any():
        return bits.copy()
    c_m = image.data[candidates].astype(float).mean(axis=0)
    c_b = image.data[rest].astype(float).mean(axis=0)
    cutoff = settings.theta2 * np.linalg.norm(c_b - c_m)
    survivors = candidates & (
        np.linalg.norm(image.data.astype(float) - c_m, axis=2) <= cutoff
    )
    height, width = bits.shape
    grown = bits.copy()
    queue = deque(map(tuple, np.argwhere(bits)))
    while queue:
        r, c = queue.popleft()
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                rr, cc = r + dr, c + dc
                if 0 <= rr < height and 0 <= cc < width and survivors[rr, cc] and not grown[rr, cc]:
                    grown[rr, cc] = True
                    queue.append((rr, cc))
    return grown


class TestExpandForegroundPure:
    def test_no_candidates_unchanged(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        bits = np.zeros((10, 10), dtype=bool)
        bits[4:6, 4:6] = True
        mask = BinaryMask(bits=bits)
        out = op.execute(mask, saliency_of(np.full((10, 10), 50.0)), RgbImage.filled(10, 10, (9, 9, 9)))
        assert out == mask

    def test_transition_statistics(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        region = op.transition(*cutoff_scene())
        assert region.mean_color == pytest.approx((100.0, *OTHER))
        assert region.background_mean_color == pytest.approx((150.0, *OTHER))
        assert region.cutoff == pytest.approx(40.0)
        assert region.candidates.count == 48

    def test_cutoff_rejects_far_candidates(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        out = op.execute(*cutoff_scene())
        # d_p = 45 rejected, d_p = 30 retained
        assert not out.bits[6, 6] and not out.bits[6, 13]
        assert out.bits[13, 6] and out.bits[13, 13]
        assert out.count == 16 + 46

    def test_only_adjacent_blob_merges(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        mask, sm, image = blob_scene()
        out = op.execute(mask, sm, image)
        assert out.bits[7:10, 7:10].all()
        assert not out.bits[20:24, 20:24].any()
        assert out.count == 25 + 9

    def test_adjacency_follows_connectivity(self):
        op = Operation.get("ExpandForeground")(settings=ScsParams(connectivity=4))
        mask, sm, image = blob_scene()
        # the blob only touches the block diagonally
        assert op.execute(mask, sm, image) == mask

    def test_component_reaching_frame_merges(self, settings):
        mask, sm, image = blob_scene()
        # candidate band from the top edge down to the block
        values = sm.values.copy()
        values[0:10, 12:14] = 0.0
        data = image.data.copy()
        data[0:10, 12:14] = (100, 100, 100)
        out = Operation.get("ExpandForeground")(settings=settings).execute(
            mask, saliency_of(values), RgbImage(data=data)
        )
        assert out.bits[0:10, 12:14].all()
        assert out.bits[7:10, 7:10].all()

    def test_frame_guard_is_opt_in(self, settings):
        mask, sm, image = blob_scene(frame_blob=True)
        default = Operation.get("ExpandForeground")(settings=settings).execute(mask, sm, image)
        assert default.bits[0:10, 15:17].all()
        guarded = Operation.get("ExpandForeground")(
            settings=ScsParams(expand_frame_guard=True)
        ).execute(mask, sm, image)
        assert not guarded.bits[0:10, 15:17].any()
        assert guarded.bits[7:10, 7:10].all()

    def test_never_shrinks_and_matches_flood_fill(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        rng = np.random.default_rng(17)
        for _ in range(20):
            bits = np.zeros((16, 16), dtype=bool)
            bits[6:10, 6:10] = True
            values = np.where(rng.random((16, 16)) < 0.5, 0.0, 60.0)
            values[bits] = 200.0
            palette = np.array([[90, 60, 50], [110, 70, 60], [200, 170, 150]], dtype=np.uint8)
            data = palette[rng.integers(0, 3, (16, 16))]
            mask, sm, image = BinaryMask(bits=bits), saliency_of(values), RgbImage(data=data)
            out = op.execute(mask, sm, image)
            assert (out.bits >= mask.bits).all()
            assert np.array_equal(out.bits, flood_expand(mask, sm, image, settings))

    def test_lab_distance(self):
        op = Operation.get("ExpandForeground")(settings=ScsParams(color_space="lab"))
        region = op.transition(*cutoff_scene())
        spread = distances(
            np.array([region.background_mean_color]), region.mean_color, "lab"
        )[0]
        assert region.cutoff == pytest.approx(0.8 * spread)

    def test_band_rule_needs_mu_s(self):
        op = Operation.get("ExpandForeground")(settings=ScsParams(candidate_rule="band"))
        with pytest.raises(InvalidInputError, match="mu_s"):
            op.execute(*cutoff_scene())

    def test_band_rule_selects_between_ts_and_mu_s(self):
        op = Operation.get("ExpandForeground")(settings=ScsParams(candidate_rule="band"))
        mask, sm, image = cutoff_scene()
        candidates = op.candidates(mask, sm, 60.0)
        assert candidates.sum() == 400 - 64


class TestExpandForegroundJson:
    def test_nested_lists(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        mask, sm, image = blob_scene()
        out = op.execute_json(
            {
                "mask": mask.bits.astype(int).tolist(),
                "sm": sm.values.tolist(),
                "image": image.data.tolist(),
            }
        )
        assert out.count == 34

    def test_mu_s_type_mismatch(self, settings):
        op = Operation.get("ExpandForeground")(settings=settings)
        mask, sm, image = blob_scene()
        with pytest.raises(TypeError, match="'mu_s' to be number"):
            op.execute_json(
                {
                    "mask": mask.bits.astype(int).tolist(),
                    "sm": sm.values.tolist(),
                    "image": image.data.tolist(),
                    "mu_s": "high",
                }
            )
