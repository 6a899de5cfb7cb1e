"""ComputeMetrics: ConfusionCounts → MetricsReport (AC, SE, SP, DI, JA, P, E, HD, XOR)"""

from __future__ import annotations

import numpy as np
import pytest

from scs_lesion.model import METRIC_NAMES, ConfusionCounts
from scs_lesion.operation import Operation
from scs_lesion.raster import BinaryMask


def counts(tp, fp, tn, fn) -> ConfusionCounts:
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


class TestComputeMetricsPure:
    def test_perfect_segmentation(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        report = op.execute(counts(40, 0, 60, 0))
        assert report.values() == {
            "ac": 1.0, "se": 1.0, "sp": 1.0, "di": 1.0, "ja": 1.0,
            "p": 1.0, "e": 0.0, "hd": 0.0, "xor": 0.0,
        }

    def test_hand_values(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        report = op.execute(counts(40, 10, 30, 20))
        expected = {
            "ac": 0.70, "se": 0.6667, "sp": 0.75, "di": 0.7273, "ja": 0.5714,
            "p": 0.80, "e": 0.30, "hd": 0.4286, "xor": 0.50,
        }
        for name, value in expected.items():
            assert getattr(report, name) == pytest.approx(value, abs=1e-4), name

    def test_empty_ground_truth(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        report = op.execute(counts(0, 0, 100, 0))
        assert sorted(report.undefined) == sorted(["se", "di", "ja", "p", "hd", "xor"])
        assert (report.ac, report.sp, report.e) == (1.0, 1.0, 0.0)

    def test_identities_on_random_counts(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        rng = np.random.default_rng(2024)
        for tp, fp, tn, fn in rng.integers(0, 1000, size=(10_000, 4)):
            if tp + fp + tn + fn == 0:
                continue
            report = op.execute(counts(int(tp), int(fp), int(tn), int(fn)))
            defined = {k: v for k, v in report.values().items() if v is not None}
            assert all(0.0 <= v <= 1.0 for k, v in defined.items() if k != "xor")
            assert report.ac + report.e == pytest.approx(1.0)
            if report.ja is not None:
                assert report.di == pytest.approx(2 * report.ja / (1 + report.ja))
                assert report.hd == pytest.approx(1 - report.ja)

    def test_swapping_pred_and_gt(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        forward = op.execute(counts(40, 10, 30, 20))
        backward = op.execute(counts(40, 20, 30, 10))
        for name in ("ac", "di", "ja", "e", "hd"):
            assert getattr(forward, name) == pytest.approx(getattr(backward, name))
        assert forward.se == pytest.approx(backward.p)
        assert forward.p == pytest.approx(backward.se)

    def test_matches_brute_force_on_masks(self, settings):
        confusion = Operation.get("Confusion")(settings=settings)
        op = Operation.get("ComputeMetrics")(settings=settings)
        rng = np.random.default_rng(6)
        for _ in range(100):
            pred = rng.random((12, 15)) > 0.5
            gt = rng.random((12, 15)) > 0.4
            report = op.execute(confusion.execute(BinaryMask(bits=pred), BinaryMask(bits=gt)))
            union = np.logical_or(pred, gt).sum()
            inter = np.logical_and(pred, gt).sum()
            differ = np.logical_xor(pred, gt).sum()
            assert report.ac == pytest.approx((pred == gt).mean())
            assert report.ja == pytest.approx(inter / union)
            assert report.di == pytest.approx(2 * inter / (pred.sum() + gt.sum()))
            assert report.xor == pytest.approx(differ / gt.sum())
            assert report.se == pytest.approx(inter / gt.sum())
            assert report.p == pytest.approx(inter / pred.sum())

    def test_wrong_type_raises(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        with pytest.raises(TypeError, match="ConfusionCounts"):
            op.execute((1, 2, 3, 4))


class TestComputeMetricsJson:
    def test_counts_dict(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        report = op.execute_json({"counts": {"tp": 40, "fp": 10, "tn": 30, "fn": 20}})
        assert report.di == pytest.approx(0.7273, abs=1e-4)

    def test_nested_confusion(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        mask = [[1, 0], [0, 1]]
        report = op.execute_json(
            {"counts": {"@op": "Confusion", "args": {"pred": mask, "gt": mask}}}
        )
        assert all(report.values()[name] is not None for name in METRIC_NAMES)
        assert report.ja == 1.0

    def test_counts_type_mismatch(self, settings):
        op = Operation.get("ComputeMetrics")(settings=settings)
        with pytest.raises(TypeError, match="'counts' to be dict"):
            op.execute_json({"counts": [40, 10, 30, 20]})
