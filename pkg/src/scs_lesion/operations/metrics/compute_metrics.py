from typing import Optional
from scs_lesion.model import ConfusionCounts, MetricsReport
from scs_lesion.operation import Operation


def ratio(numerator: int, denominator: int) -> Optional[float]:
    """numerator / denominator, or None when the denominator is zero."""
    if denominator == 0:
        return None
    return numerator / denominator


class ComputeMetrics(Operation):
    """
    The nine segmentation quality measures
    """

    @classmethod
    def description(cls) -> str:
        return """Accuracy, sensitivity, specificity, Dice, Jaccard, precision, error,
        Hammoude distance and XOR from confusion counts. A metric whose
        denominator is zero is reported as undefined (null)."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "counts": {
                    "type": "object",
                    "properties": {k: {"type": "integer"} for k in ("tp", "fp", "tn", "fn")},
                },
            },
            "required": ["counts"],
        }

    def execute(self, c: ConfusionCounts) -> MetricsReport:
        """Pure function: counts → report"""
        if not isinstance(c, ConfusionCounts):
            raise TypeError(
                f"ComputeMetrics expects counts to be ConfusionCounts, got {type(c).__name__}"
            )
        tp, fp, tn, fn = c.tp, c.fp, c.tn, c.fn
        union = tp + fn + fp
        return MetricsReport(
            ac=ratio(tp + tn, c.total),
            se=ratio(tp, tp + fn),
            sp=ratio(tn, tn + fp),
            di=ratio(2 * tp, 2 * tp + fn + fp),
            ja=ratio(tp, union),
            p=ratio(tp, tp + fp),
            e=ratio(fp + fn, c.total),
            hd=ratio(fn + fp, union),
            xor=ratio(fp + fn, tp + fn),
        )

    def execute_json(self, arguments: dict) -> MetricsReport:
        counts = self.argument(arguments, "counts")
        if isinstance(counts, dict):
            counts = ConfusionCounts(**counts)
        if not isinstance(counts, ConfusionCounts):
            raise TypeError(
                f"ComputeMetrics operation expects 'counts' to be dict, got {type(counts)}"
            )
        return self.execute(counts)
