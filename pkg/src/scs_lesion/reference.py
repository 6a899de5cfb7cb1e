"""Published mean scores on PH2 and ISIC2016, for side-by-side comparison with a batch run."""

from typing import Dict, List, Optional, Tuple
from scs_lesion.model import METRIC_NAMES

Row = Tuple[Optional[float], ...]


def _row(*values: Optional[float]) -> Row:
    assert len(values) == len(METRIC_NAMES)
    return values


# Columns follow METRIC_NAMES; None where a method did not report the metric.
PUBLISHED: Dict[str, Dict[str, Row]] = {
    "ph2": {
        "MR": _row(None, None, None, 0.861, None, None, None, 0.226, 0.288),
        "RBD": _row(None, None, None, 0.862, None, None, None, 0.219, 0.228),
        "RC": _row(None, None, None, 0.748, None, None, None, 0.410, 0.350),
        "RSSLS": _row(None, None, None, 0.910, 0.682, None, None, 0.155, 0.165),
        "Fan": _row(None, 0.870, None, 0.893, None, 0.968, 0.064, None, None),
        "Hu": _row(None, 0.942, None, 0.922, None, 0.913, 0.053, 0.139, 0.159),
        "SCS": _row(0.954, 0.952, 0.955, 0.921, 0.900, 0.921, 0.076, 0.155, 0.205),
    },
    "isic-train": {
        "MR": _row(None, None, None, 0.807, None, None, None, 0.295, 0.693),
        "RBD": _row(None, None, None, 0.804, None, None, None, 0.300, 0.341),
        "RC": _row(None, None, None, 0.697, None, None, None, 0.393, 0.338),
        "RSSLS": _row(None, None, None, 0.834, None, None, None, 0.257, 0.362),
        "Fan": _row(None, 0.747, None, 0.818, None, 0.973, 0.082, None, None),
        "Hu": _row(None, 0.766, None, 0.824, None, 0.964, 0.081, 0.262, 0.314),
        "SCS": _row(0.910, 0.832, 0.958, 0.843, 0.860, 0.961, 0.098, 0.239, 0.390),
    },
    "isic-test": {
        "SCS": _row(0.962, 0.899, 0.975, 0.877, 0.891, 0.921, 0.045, 0.159, 0.303),
    },
}


def reference_rows(dataset: str) -> List[Tuple[str, Dict[str, Optional[float]]]]:
    if dataset not in PUBLISHED:
        raise ValueError(f"No published results for {dataset}; choose from {sorted(PUBLISHED)}")
    return [
        (method, dict(zip(METRIC_NAMES, values))) for method, values in PUBLISHED[dataset].items()
    ]
