from pathlib import Path
from typing import Dict, List, Optional, Union
import csv
import logging
import re
from scs_lesion.errors import DiscoveryError
from scs_lesion.model import Layout, Manifest, SamplePair
from scs_lesion.operation import Operation
from scs_lesion.operations.dataset.load_image import IMAGE_SUFFIXES

PH2_CASE = re.compile(r"^IMD\d+$")
ISIC_IMAGE = re.compile(r"^ISIC_\d+$")
ISIC_MASK = re.compile(r"^(ISIC_\d+)_Segmentation$")
CSV_HEADER = ["id", "image", "gt"]
MANIFEST_NAME = "manifest.csv"


def image_files(folder: Path) -> List[Path]:
    if not folder.is_dir():
        return []
    return sorted(p for p in folder.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)


def first_named(folder: Path, stem: str) -> Optional[Path]:
    return next((p for p in image_files(folder) if p.stem == stem), None)


def discover_ph2(root: Path) -> List[SamplePair]:
    """IMDxxx/IMDxxx_Dermoscopic_Image/IMDxxx.* paired with IMDxxx/IMDxxx_lesion/IMDxxx_lesion.*"""
    samples = []
    for case in sorted(root.rglob("IMD*")):
        if not case.is_dir() or not PH2_CASE.match(case.name):
            continue
        case_id = case.name
        image = first_named(case / f"{case_id}_Dermoscopic_Image", case_id) or first_named(
            case, case_id
        )
        if image is None:
            logging.warning("PH2 case %s has no dermoscopic image", case_id)
            continue
        gt = first_named(case / f"{case_id}_lesion", f"{case_id}_lesion")
        samples.append(SamplePair(id=case_id, image_path=image, gt_path=gt))
    return samples


def discover_isic(root: Path) -> List[SamplePair]:
    """ISIC_<id>.* images paired with ISIC_<id>_Segmentation.* masks anywhere under root."""
    images: Dict[str, Path] = {}
    masks: Dict[str, Path] = {}
    for path in sorted(root.rglob("*")):
        if not path.is_file() or path.suffix.lower() not in IMAGE_SUFFIXES:
            continue
        mask_match = ISIC_MASK.match(path.stem)
        if mask_match:
            masks.setdefault(mask_match.group(1), path)
        elif ISIC_IMAGE.match(path.stem):
            if path.stem in images:
                raise DiscoveryError(f"Duplicate sample id: {path.stem}")
            images[path.stem] = path
    return [
        SamplePair(id=sample_id, image_path=path, gt_path=masks.get(sample_id))
        for sample_id, path in images.items()
    ]


def discover_csv(root: Path) -> List[SamplePair]:
    """Rows of `id,image,gt`; relative paths resolve against the manifest's folder."""
    manifest = root / MANIFEST_NAME if root.is_dir() else root
    base = manifest.parent
    try:
        with open(manifest, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != CSV_HEADER:
                raise DiscoveryError(
                    f"{manifest}: expected header {','.join(CSV_HEADER)}, got {reader.fieldnames}"
                )
            rows = list(reader)
    except OSError as e:
        raise DiscoveryError(f"Cannot read manifest {manifest}: {e}") from e

    samples, seen = [], set()
    for row in rows:
        sample_id = (row["id"] or "").strip()
        if not sample_id:
            continue
        if sample_id in seen:
            raise DiscoveryError(f"Duplicate sample id: {sample_id}")
        seen.add(sample_id)
        gt = (row.get("gt") or "").strip()
        samples.append(
            SamplePair(
                id=sample_id,
                image_path=base / row["image"].strip(),
                gt_path=base / gt if gt else None,
            )
        )
    return samples


DISCOVERERS = {"ph2": discover_ph2, "isic": discover_isic, "csv": discover_csv}
SEARCHED = {
    "ph2": "IMD* case folders with <id>_Dermoscopic_Image and <id>_lesion",
    "isic": "ISIC_<id> images and ISIC_<id>_Segmentation masks",
    "csv": f"an id,image,gt manifest ({MANIFEST_NAME})",
}


class Discover(Operation):
    """
    Builds a manifest of image / ground-truth pairs from a dataset tree
    """

    @classmethod
    def description(cls) -> str:
        return """Enumerates the samples of a local dataset tree. Layouts: ph2 (IMD case
        folders), isic (ISIC_<id> images with ISIC_<id>_Segmentation masks) and
        csv (explicit id,image,gt manifest). Images without ground truth are
        kept with an absent gt. The manifest is sorted by id."""

    @classmethod
    def inputSchema(cls) -> dict:
        return {
            "type": "object",
            "properties": {
                "root": {"type": "string"},
                "layout": {"type": "string", "enum": list(DISCOVERERS)},
            },
            "required": ["root", "layout"],
        }

    def execute(self, root: Union[str, Path], layout: Layout) -> Manifest:
        """Pure function: tree → manifest"""
        if layout not in DISCOVERERS:
            raise DiscoveryError(f"Unknown layout: {layout}")
        root = Path(root)
        if not root.exists():
            raise DiscoveryError(f"Dataset root {root} does not exist")

        samples = sorted(DISCOVERERS[layout](root), key=lambda sample: sample.id)
        if not samples:
            raise DiscoveryError(f"No images found under {root}; searched for {SEARCHED[layout]}")

        missing = sum(1 for sample in samples if sample.gt_path is None)
        logging.info(
            "Discovered %d sample(s) under %s (%s layout, %d without ground truth)",
            len(samples), root, layout, missing,
        )
        try:
            return Manifest(layout=layout, samples=samples)
        except ValueError as e:
            raise DiscoveryError(f"Invalid manifest for {root}: {e}") from e

    def execute_json(self, arguments: dict) -> Manifest:
        root = self.argument(arguments, "root")
        if not isinstance(root, str):
            raise TypeError(f"Discover operation expects 'root' to be str, got {type(root)}")
        return self.execute(root, self.argument(arguments, "layout"))
