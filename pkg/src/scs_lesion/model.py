from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scs_lesion.params import ScsParams
from scs_lesion.raster import BinaryMask, Color, PixelRegion

Layout = Literal["ph2", "isic", "csv"]

# Column order of the evaluation tables
METRIC_NAMES: Tuple[str, ...] = ("ac", "se", "sp", "di", "ja", "p", "e", "hd", "xor")


class BinarizationTrace(BaseModel):
    """Outcome of the iterated saliency binarization."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    final_mask: BinaryMask
    thresholds: List[float]
    excluded: BinaryMask
    iterations: int

    @model_validator(mode="after")
    def _check(self) -> "BinarizationTrace":
        if self.iterations != len(self.thresholds):
            raise ValueError("iterations must equal the number of recorded thresholds")
        if any(b > a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("binarization thresholds must be non-increasing")
        return self

    @property
    def mu_s(self) -> float:
        """Threshold of the last iteration."""
        return self.thresholds[-1]


class ColorProximityStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    c_star: Color
    distances: List[float]
    d_min: float
    d_max: float

    @property
    def delta(self) -> float:
        return self.d_max - self.d_min

    @property
    def small_delta(self) -> float:
        return (self.d_max + self.d_min) / 2.0


class KernelPartition(BaseModel):
    """Foreground regions split into kernel and peripheral components."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel: List[PixelRegion]
    peripheral: List[PixelRegion]
    kernel_area: int
    kernel_hull_area: int
    width: int
    height: int

    @property
    def minsize(self) -> int:
        return min(self.width, self.height)

    def kernel_pixels(self) -> np.ndarray:
        if not self.kernel:
            return np.empty((0, 2), dtype=np.intp)
        return np.concatenate([region.pixels for region in self.kernel])

    def to_mask(self, include_peripheral: bool = True) -> BinaryMask:
        regions = self.kernel + (self.peripheral if include_peripheral else [])
        pixels = (
            np.concatenate([region.pixels for region in regions])
            if regions
            else np.empty((0, 2), dtype=np.intp)
        )
        return BinaryMask.from_pixels(pixels, self.width, self.height)


class TransitionRegion(BaseModel):
    """Low-saliency band around the foreground considered for expansion."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    candidates: BinaryMask
    mean_color: Color
    background_mean_color: Color
    cutoff: float


class LesionResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mask_reduced: BinaryMask
    mask_full: BinaryMask
    # one closed (row, col) polygon per hulled component, original resolution
    boundary: List[np.ndarray] = Field(default_factory=list)
    low_confidence: bool = False
    thresholds: List[float] = Field(default_factory=list)
    trace: Dict[str, BinaryMask] = Field(default_factory=dict)
    skipped_stages: List[str] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)

    @property
    def elapsed_ms(self) -> float:
        return sum(self.timings.values()) * 1000.0


class ConfusionCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: int = Field(ge=0)
    fp: int = Field(ge=0)
    tn: int = Field(ge=0)
    fn: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_total(self) -> "ConfusionCounts":
        if self.total == 0:
            raise ValueError("ConfusionCounts must cover at least one pixel")
        return self

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


class MetricsReport(BaseModel):
    """The nine evaluation measures; None marks a metric with a zero denominator."""

    model_config = ConfigDict(frozen=True)

    ac: Optional[float] = None
    se: Optional[float] = None
    sp: Optional[float] = None
    di: Optional[float] = None
    ja: Optional[float] = None
    p: Optional[float] = None
    e: Optional[float] = None
    hd: Optional[float] = None
    xor: Optional[float] = None
    # per-metric count of reports left out of an aggregate
    skipped: Dict[str, int] = Field(default_factory=dict)

    def values(self) -> Dict[str, Optional[float]]:
        return {name: getattr(self, name) for name in METRIC_NAMES}

    @property
    def undefined(self) -> List[str]:
        return [name for name, value in self.values().items() if value is None]


class SamplePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    image_path: Path
    gt_path: Optional[Path] = None


class Manifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    layout: Layout
    samples: List[SamplePair]

    @field_validator("samples")
    @classmethod
    def _unique_ids(cls, value: List[SamplePair]) -> List[SamplePair]:
        seen = set()
        for sample in value:
            if sample.id in seen:
                raise ValueError(f"Duplicate sample id: {sample.id}")
            seen.add(sample.id)
        return value

    def __len__(self) -> int:
        return len(self.samples)


class RunConfig(BaseModel):
    """Everything a CLI run needs beyond the pipeline parameters."""

    model_config = ConfigDict(frozen=True)

    params: ScsParams = Field(default_factory=ScsParams)
    out: Path = Path(".")
    layout: Layout = "csv"
    report: Optional[Path] = None
    overlay: bool = False
    jobs: int = Field(1, ge=1)
    reference: Optional[Literal["ph2", "isic-train", "isic-test"]] = None
