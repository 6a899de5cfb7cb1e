from typing import List
import logging
import numpy as np
from scs_lesion.errors import InvalidInputError
from scs_lesion.model import METRIC_NAMES, MetricsReport
from scs_lesion.operation import Operation


class Aggregate(Operation):
    """
    Dataset mean of per-image metric reports
    """

    @classmethod
    def description(cls) -> str:
        return """Per-metric arithmetic mean over the reports in which that metric is
        defined. The number of reports skipped for each metric is recorded."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "reports": {"type": "array", "items": {"type": "object"}},
            },
            "required": ["reports"],
        }

    def execute(self, reports: List[MetricsReport]) -> MetricsReport:
        """Pure function: reports → mean report"""
        if not reports:
            raise InvalidInputError("Cannot aggregate an empty list of reports")
        means, skipped = {}, {}
        for name in METRIC_NAMES:
            defined = [getattr(r, name) for r in reports if getattr(r, name) is not None]
            skipped[name] = len(reports) - len(defined)
            means[name] = float(np.mean(defined)) if defined else None
            if skipped[name]:
                logging.warning("Metric %s undefined in %d report(s)", name, skipped[name])
        return MetricsReport(**means, skipped=skipped)

    def execute_json(self, arguments: dict) -> MetricsReport:
        reports = self.argument(arguments, "reports")
        if not isinstance(reports, list):
            raise TypeError(
                f"Aggregate operation expects 'reports' to be list, got {type(reports)}"
            )
        return self.execute(
            [r if isinstance(r, MetricsReport) else MetricsReport(**r) for r in reports]
        )
