import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from types import ModuleType
from typing import Any, Dict, List, Optional, Tuple, Type
import importlib
import inspect
import pkgutil
import scs_lesion.operations
from scs_lesion.batch import run_batch, save_image, save_mask, write_outputs
from scs_lesion.errors import DiscoveryError, InvalidInputError, LoadError
from scs_lesion.model import METRIC_NAMES, RunConfig
from scs_lesion.operation import Operation
from scs_lesion.operations.cli.generate_phantom import GeneratePhantom
from scs_lesion.operations.dataset.discover import MANIFEST_NAME, Discover
from scs_lesion.operations.dataset.load_image import read_image
from scs_lesion.operations.dataset.load_mask import read_mask
from scs_lesion.operations.metrics.compute_metrics import ComputeMetrics
from scs_lesion.operations.metrics.confusion import Confusion
from scs_lesion.operations.segmentation.segment import Segment
from scs_lesion.params import FLAG_FIELDS, NEGATED_FLAGS, ScsParams, build_params, load_config_file

# Configure logging to show INFO level and above
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()],
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def list_operation_subclasses(
    pkg: ModuleType, base_class: Type[Operation]
) -> List[Type[Operation]]:
    subclasses = []

    for loader, module_name, is_pkg in pkgutil.walk_packages(
        pkg.__path__, pkg.__name__ + "."
    ):
        module = importlib.import_module(module_name)

        for name, obj in inspect.getmembers(module, inspect.isclass):
            # only classes defined in this module, not re-exported imports
            if (
                obj.__module__ == module.__name__
                and issubclass(obj, base_class)
                and obj is not base_class
            ):
                subclasses.append(obj)

    return subclasses


def register(classes: List[Type[Operation]]):
    for cls in classes:
        Operation.register(cls)


def format_metric(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.4f}"


def cmd_segment(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    image_path = Path(args.image)
    image = read_image(image_path)
    result = Segment(settings=settings).execute(image)
    out = Path(run["out"])
    for path in write_outputs(image_path.stem, image, result, out, settings=settings):
        logging.info("Wrote %s", path)
    if result.low_confidence:
        print(f"warning: low confidence segmentation for {image_path}", file=sys.stderr)
    return EXIT_OK


def cmd_batch(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    manifest = Discover(settings=settings).execute(args.root, run["layout"])
    config = RunConfig(
        params=settings,
        out=Path(run["out"]),
        layout=run["layout"],
        report=Path(args.report) if args.report else None,
        overlay=run["overlay"],
        jobs=run["jobs"],
        reference=run["reference"],
    )
    summary = run_batch(manifest, config)
    if summary.failed == len(summary.rows):
        logging.error("Every sample failed")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    pred, gt = read_mask(args.pred), read_mask(args.gt)
    try:
        counts = Confusion(settings=settings).execute(pred, gt)
    except InvalidInputError as e:
        print(f"error: {args.pred} vs {args.gt}: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = ComputeMetrics(settings=settings).execute(counts)
    for name in METRIC_NAMES:
        print(f"{name}={format_metric(getattr(report, name))}")
    return EXIT_OK


def cmd_gen_phantoms(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    out = Path(run["out"])
    out.mkdir(parents=True, exist_ok=True)
    generator = GeneratePhantom(settings=settings)
    with open(out / MANIFEST_NAME, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "image", "gt"])
        for index in range(args.count):
            sample_id = f"phantom_{index:03d}"
            image, gt = generator.execute(
                settings.seed + index, args.size, args.hair, not args.no_vignette, args.bubbles
            )
            save_image(image, out / f"{sample_id}.png")
            save_mask(gt, out / f"{sample_id}_gt.png")
            writer.writerow([sample_id, f"{sample_id}.png", f"{sample_id}_gt.png"])
    logging.info("Wrote %d phantom(s) to %s", args.count, out)
    return EXIT_OK


def cmd_run(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    logging.info("Executing from JSON input %s", args.pipeline)
    with open(args.pipeline) as json_file:
        json_input = json.load(json_file)
    result = Operation.process_json(settings, json_input)
    print(json.dumps(Operation.to_plain(result)))
    return EXIT_OK


def cmd_ops(args: argparse.Namespace, settings: ScsParams, run: Dict[str, Any]) -> int:
    for operation in sorted(Operation.list_operations(), key=lambda op: op.name()):
        summary = " ".join(operation.description().split())
        print(f"{operation.name()}: {summary}")
    return EXIT_OK


COMMANDS = {
    "segment": cmd_segment,
    "batch": cmd_batch,
    "eval": cmd_eval,
    "gen-phantoms": cmd_gen_phantoms,
    "run": cmd_run,
    "ops": cmd_ops,
}


def param_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; names match config-file keys."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, help="key = value config file")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    for flag in ("maxdim", "colnum", "tn", "seed", "connectivity", "max-iters"):
        parser.add_argument(f"--{flag}", type=int)
    for flag in ("tc", "theta1", "ts", "theta2"):
        parser.add_argument(f"--{flag}", type=float)
    parser.add_argument("--quantizer", choices=["som", "median_cut"])
    parser.add_argument("--candidate-rule", choices=["below_ts", "band"])
    parser.add_argument("--proximity-rule", choices=["literal", "inverted"])
    parser.add_argument("--color-space", choices=["rgb", "lab"])
    for flag in NEGATED_FLAGS:
        parser.add_argument(f"--{flag}", action="store_true")
    parser.add_argument("--jobs", type=int, help="Worker processes for batch")
    parser.add_argument("--out", type=str, help="Output directory")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = param_parser()
    parser = argparse.ArgumentParser(
        prog="scs-lesion", description="Saliency and color based skin lesion segmentation."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    segment = commands.add_parser("segment", parents=[common], help="Segment one image")
    segment.add_argument("image")

    batch = commands.add_parser("batch", parents=[common], help="Segment and score a dataset")
    batch.add_argument("root")
    batch.add_argument("--layout", choices=["ph2", "isic", "csv"])
    batch.add_argument("--report", type=str, help="CSV path (default <out>/results.csv)")
    batch.add_argument("--overlay", action="store_true", help="Write TP/FP/FN overlays")
    batch.add_argument("--reference", choices=["ph2", "isic-train", "isic-test"])

    evaluate = commands.add_parser("eval", parents=[common], help="Score a mask against ground truth")
    evaluate.add_argument("pred")
    evaluate.add_argument("gt")

    phantoms = commands.add_parser("gen-phantoms", parents=[common], help="Write synthetic lesions")
    phantoms.add_argument("--count", type=int, default=50)
    phantoms.add_argument("--size", type=int, default=600)
    phantoms.add_argument("--hair", type=int, default=30)
    phantoms.add_argument("--bubbles", type=int, default=0)
    phantoms.add_argument("--no-vignette", action="store_true")

    pipeline = commands.add_parser("run", parents=[common], help="Execute a JSON @op pipeline")
    pipeline.add_argument("pipeline")

    commands.add_parser("ops", parents=[common], help="List operations")
    return parser


def resolve(args: argparse.Namespace) -> Tuple[ScsParams, Dict[str, Any]]:
    """Pipeline parameters and run options: defaults < environment < config file < flags."""
    entries = load_config_file(args.config) if args.config else {}
    flags = {key: getattr(args, key.replace("-", "_")) for key in (*FLAG_FIELDS, *NEGATED_FLAGS)}
    given = {k: v for k, v in flags.items() if v is not None and v is not False}
    settings = build_params(None, {**entries, **given})

    def option(key: str, default: Any) -> Any:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            return value
        return entries.get(key, default)

    run = {
        "out": option("out", "."),
        "jobs": int(option("jobs", 1)),
        "layout": option("layout", "csv"),
        "overlay": str(option("overlay", False)).lower() in ("1", "true", "yes", "on"),
        "reference": option("reference", None),
    }
    return settings, run


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    register(list_operation_subclasses(scs_lesion.operations, Operation))

    try:
        settings, run = resolve(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, settings, run)
    except (LoadError, DiscoveryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, TypeError) as e:
        # invalid inputs, parameters and pipeline documents
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
