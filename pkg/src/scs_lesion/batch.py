from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple
import csv
import logging
import time
import numpy as np
from PIL import Image
from pydantic import BaseModel
from scs_lesion.model import METRIC_NAMES, LesionResult, Manifest, MetricsReport, RunConfig, SamplePair
from scs_lesion.operations.cli.render_boundary import RenderBoundary
from scs_lesion.operations.cli.render_overlay import RenderOverlay
from scs_lesion.operations.dataset.load_pair import LoadPair
from scs_lesion.operations.metrics.aggregate import Aggregate
from scs_lesion.operations.metrics.compute_metrics import ComputeMetrics
from scs_lesion.operations.metrics.confusion import Confusion
from scs_lesion.operations.segmentation.segment import Segment
from scs_lesion.params import ScsParams
from scs_lesion.raster import BinaryMask, RgbImage
from scs_lesion.reference import reference_rows

CSV_COLUMNS = ["id", *METRIC_NAMES, "low_confidence", "ms"]
RESULTS_NAME = "results.csv"
COMPARISON_NAME = "comparison.csv"
SUMMARY_ID = "MEAN"


class BatchRow(BaseModel):
    """Outcome of one sample: metrics when ground truth exists, error text on failure."""

    id: str
    report: Optional[MetricsReport] = None
    low_confidence: Optional[bool] = None
    ms: Optional[float] = None
    error: Optional[str] = None


class BatchSummary(BaseModel):
    rows: List[BatchRow]
    mean: Optional[MetricsReport] = None

    @property
    def failed(self) -> int:
        return sum(1 for row in self.rows if row.error is not None)

    @property
    def flagged(self) -> int:
        return sum(1 for row in self.rows if row.low_confidence)


def save_mask(mask: BinaryMask, path: Path) -> None:
    Image.fromarray(mask.bits.astype(np.uint8) * 255).save(path)


def save_image(image: RgbImage, path: Path) -> None:
    Image.fromarray(image.data).save(path)


def write_report(sample_id: str, result: LesionResult, path: Path) -> None:
    lines = [
        f"id={sample_id}",
        f"low_confidence={str(result.low_confidence).lower()}",
        f"thresholds={','.join(f'{t:.4f}' for t in result.thresholds)}",
        f"skipped_stages={','.join(result.skipped_stages)}",
        f"lesion_pixels={result.mask_full.count}",
    ]
    lines += [f"time_{stage}_ms={seconds * 1000.0:.1f}" for stage, seconds in result.timings.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_outputs(
    sample_id: str,
    image: RgbImage,
    result: LesionResult,
    out: Path,
    gt: Optional[BinaryMask] = None,
    overlay: bool = False,
    settings: Optional[ScsParams] = None,
) -> List[Path]:
    """Mask, boundary rendering, text report and (optionally) the TP/FP/FN overlay."""
    settings = settings or ScsParams()
    out.mkdir(parents=True, exist_ok=True)
    written = [out / f"{sample_id}_mask.png", out / f"{sample_id}_boundary.png"]
    save_mask(result.mask_full, written[0])
    save_image(RenderBoundary(settings=settings).execute(image, result.mask_full), written[1])
    if overlay and gt is not None:
        written.append(out / f"{sample_id}_overlay.png")
        save_image(RenderOverlay(settings=settings).execute(image, result.mask_full, gt), written[-1])
    written.append(out / f"{sample_id}_report.txt")
    write_report(sample_id, result, written[-1])
    return written


def process_sample(job: Tuple[SamplePair, ScsParams, Path, bool]) -> BatchRow:
    """Segment and score one sample. Failures become error rows."""
    sample, settings, out, overlay = job
    started = time.perf_counter()
    try:
        image, gt = LoadPair(settings=settings).execute(sample)
        result = Segment(settings=settings).execute(image)
        write_outputs(sample.id, image, result, out, gt, overlay, settings)
    except Exception as e:
        logging.error("Sample %s failed: %s", sample.id, e)
        return BatchRow(id=sample.id, error=str(e))

    report = None
    if gt is not None:
        counts = Confusion(settings=settings).execute(result.mask_full, gt)
        report = ComputeMetrics(settings=settings).execute(counts)
    return BatchRow(
        id=sample.id,
        report=report,
        low_confidence=result.low_confidence,
        ms=(time.perf_counter() - started) * 1000.0,
    )


def format_value(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6f}"


def csv_row(row_id: str, report: Optional[MetricsReport], low_confidence: str, ms: str) -> List[str]:
    values = report.values() if report is not None else {}
    return [row_id, *(format_value(values.get(name)) for name in METRIC_NAMES), low_confidence, ms]


def write_results(summary: BatchSummary, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in summary.rows:
            flag = "" if row.low_confidence is None else str(int(row.low_confidence))
            ms = "" if row.ms is None else f"{row.ms:.1f}"
            writer.writerow(csv_row(row.id, row.report, flag, ms))
        if summary.mean is not None:
            writer.writerow(csv_row(SUMMARY_ID, summary.mean, str(summary.flagged), ""))


def write_comparison(summary: BatchSummary, dataset: str, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["method", *METRIC_NAMES])
        for method, values in reference_rows(dataset):
            writer.writerow([method, *(format_value(values[name]) for name in METRIC_NAMES)])
        if summary.mean is not None:
            writer.writerow(["this run", *(format_value(v) for v in summary.mean.values().values())])


def run_batch(manifest: Manifest, config: RunConfig) -> BatchSummary:
    """Process every sample, in manifest order regardless of worker completion order."""
    jobs = [(sample, config.params, config.out, config.overlay) for sample in manifest.samples]
    logging.info("Processing %d sample(s) with %d worker(s)", len(jobs), config.jobs)
    if config.jobs == 1:
        rows = [process_sample(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            rows = list(executor.map(process_sample, jobs))

    reports: Sequence[MetricsReport] = [row.report for row in rows if row.report is not None]
    mean = Aggregate(settings=config.params).execute(list(reports)) if reports else None
    summary = BatchSummary(rows=rows, mean=mean)

    config.out.mkdir(parents=True, exist_ok=True)
    write_results(summary, config.report or config.out / RESULTS_NAME)
    if config.reference:
        write_comparison(summary, config.reference, config.out / COMPARISON_NAME)
    logging.info(
        "Batch done: %d ok, %d failed, %d low confidence",
        len(rows) - summary.failed, summary.failed, summary.flagged,
    )
    return summary
