"""Shared fixtures and helpers for the scs-lesion test suite.

This file is harness, not test cases: wiring up the registry, settings and
small raster builders used across tests/unit and tests/integration.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import pytest

import scs_lesion.operations
from scs_lesion.main import list_operation_subclasses
from scs_lesion.operation import Operation
from scs_lesion.params import ScsParams
from scs_lesion.raster import BinaryMask, RgbImage, SaliencyMap


@pytest.fixture(scope="session", autouse=True)
def _register_operations() -> None:
    """Discover and register every Operation subclass once per session."""
    for cls in list_operation_subclasses(scs_lesion.operations, Operation):
        Operation.register(cls)


@pytest.fixture
def settings() -> ScsParams:
    """Default pipeline parameters."""
    return ScsParams()


@pytest.fixture
def fixture_dir() -> Path:
    """Absolute path to tests/fixtures/, independent of pytest's cwd."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def run_op(settings: ScsParams):
    """Convenience wrapper around Operation.process_json for integration tests."""

    def _run(json_data: Any, *, with_settings: ScsParams | None = None) -> Any:
        return Operation.process_json(with_settings or settings, json_data)

    return _run


def result_to_json(result: Any) -> Any:
    """Convert an operation result to JSON-comparable Python data."""
    return Operation.to_plain(result)


@pytest.fixture
def to_json():
    """Expose result_to_json as a fixture for tests that prefer DI."""
    return result_to_json


def mask_of(rows: Sequence[str]) -> BinaryMask:
    """Build a mask from strings where '#' is foreground and '.' background."""
    return BinaryMask(bits=np.array([[ch == "#" for ch in row] for row in rows]))


def mask_with(width: int, height: int, pixels: Iterable[tuple]) -> BinaryMask:
    return BinaryMask.from_pixels(np.array(list(pixels)).reshape(-1, 2), width, height)


def filled(width: int, height: int, color=(200, 200, 200)) -> RgbImage:
    return RgbImage.filled(width, height, color)


def saliency_of(values) -> SaliencyMap:
    return SaliencyMap(values=np.asarray(values, dtype=np.float64))


def pytest_collection_modifyitems(config, items) -> None:
    """Auto-tag tests under tests/unit/ as `unit`, tests/integration/ as `integration`."""
    root = Path(__file__).parent
    unit_dir = (root / "unit").resolve()
    integration_dir = (root / "integration").resolve()
    for item in items:
        item_path = Path(str(item.fspath)).resolve()
        try:
            item_path.relative_to(unit_dir)
            item.add_marker(pytest.mark.unit)
            continue
        except ValueError:
            pass
        try:
            item_path.relative_to(integration_dir)
            item.add_marker(pytest.mark.integration)
        except ValueError:
            pass
