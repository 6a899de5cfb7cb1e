import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ScsParams(BaseSettings):
    """
    Every tunable of the segmentation pipeline. Defaults are the values the
    method was tuned with on PH2 and validated on ISIC2016.

    Operations receive an instance as their `settings` and read their
    thresholds from it, so one object configures a whole pipeline run.
    """

    model_config = SettingsConfigDict(env_prefix="SCS_", frozen=True)

    # size / color reduction
    maxdim: int = Field(500, ge=16)
    colnum: int = Field(64, ge=2)
    reduce_size: bool = True
    reduce_colors: bool = True
    quantizer: Literal["som", "median_cut"] = "som"
    seed: int = 0
    som_samples: int = Field(4000, ge=64)
    som_cycles: int = Field(2, ge=1)

    # hair removal
    dehair: bool = True
    dehair_before_quantize: bool = False
    hair_line_frac: float = Field(0.05, gt=0, lt=1)
    hair_threshold: float = Field(25.0, ge=0)
    hair_min_area: int = Field(30, ge=0)

    # perceptual thresholds
    tc: float = Field(60.0, gt=0)
    tn: int = Field(50, ge=0)
    theta1: float = Field(0.2, gt=0, lt=1)
    ts: float = Field(10.0, ge=0, le=255)
    theta2: float = Field(0.8, gt=0, lt=1)

    # segmentation plumbing
    connectivity: Literal[4, 8] = 8
    max_binarize_iters: int = Field(10, ge=1)
    single_lesion: bool = True
    compute_hull: bool = True
    smooth_radius: Optional[int] = Field(None, ge=0)
    candidate_rule: Literal["below_ts", "band"] = "below_ts"
    proximity_rule: Literal["literal", "inverted"] = "literal"
    color_space: Literal["rgb", "lab"] = "rgb"
    expand_frame_guard: bool = False

    def smoothing_radius(self, minsize: int) -> int:
        """Disk radius used to smooth the final mask on a grid of the given minsize."""
        if self.smooth_radius is not None:
            return self.smooth_radius
        return max(1, int(round(0.01 * minsize)))

    def hair_line_length(self, minsize: int) -> int:
        length = int(round(self.hair_line_frac * minsize))
        # odd lengths keep the linear element centred on the pixel
        if length % 2 == 0:
            length += 1
        return max(3, length)


# Flag / config-file key → ScsParams field. Boolean "negative" flags invert.
FLAG_FIELDS: Dict[str, str] = {
    "maxdim": "maxdim",
    "colnum": "colnum",
    "tc": "tc",
    "tn": "tn",
    "theta1": "theta1",
    "ts": "ts",
    "theta2": "theta2",
    "seed": "seed",
    "connectivity": "connectivity",
    "quantizer": "quantizer",
    "candidate-rule": "candidate_rule",
    "proximity-rule": "proximity_rule",
    "color-space": "color_space",
    "max-iters": "max_binarize_iters",
}
NEGATED_FLAGS: Dict[str, str] = {
    "no-hull": "compute_hull",
    "multi-lesion": "single_lesion",
    "no-dehair": "dehair",
    "no-resize": "reduce_size",
    "no-quantize": "reduce_colors",
}
RUN_KEYS = ("jobs", "out", "layout", "overlay", "reference")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(key: str, raw: str) -> bool:
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"Config key '{key}' expects a boolean, got '{raw}'")


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read `key = value` lines; `#` starts a comment. Keys are flag names."""
    entries: Dict[str, str] = {}
    with open(path, encoding="utf-8") as config_file:
        for number, line in enumerate(config_file, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{number}: expected 'key = value', got '{line}'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lstrip("-").replace("_", "-")
            if key not in FLAG_FIELDS and key not in NEGATED_FLAGS and key not in RUN_KEYS:
                raise ValueError(f"{path}:{number}: unknown config key '{key}'")
            entries[key] = value
    logging.info("Loaded %d config entries from %s", len(entries), path)
    return entries


def params_overrides(entries: Dict[str, Any]) -> Dict[str, Any]:
    """Translate flag-named entries (config file or CLI) into ScsParams keyword arguments."""
    overrides: Dict[str, Any] = {}
    for key, value in entries.items():
        if value is None:
            continue
        if key in FLAG_FIELDS:
            # Literal[4, 8] does not coerce strings from config files
            if key == "connectivity":
                value = int(value)
            overrides[FLAG_FIELDS[key]] = value
        elif key in NEGATED_FLAGS:
            flag = value if isinstance(value, bool) else _parse_bool(key, str(value))
            if flag:
                overrides[NEGATED_FLAGS[key]] = False
    return overrides


def build_params(
    config_path: Optional[Union[str, Path]] = None, cli_entries: Optional[Dict[str, Any]] = None
) -> ScsParams:
    """Defaults < SCS_* environment < config file < command-line flags."""
    merged: Dict[str, Any] = {}
    if config_path:
        merged.update(load_config_file(config_path))
    for key, value in (cli_entries or {}).items():
        if value is not None and value is not False:
            merged[key] = value
    return ScsParams(**params_overrides(merged))
