from abc import ABC, abstractmethod
import logging
from pathlib import Path
from typing import Any, ClassVar, Dict, List, Optional, Type
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scs_lesion.params import ScsParams
from scs_lesion.raster import BinaryMask, Raster, RgbImage, SaliencyMap


class Operation(ABC, BaseModel):
    """
    Abstract base class for all operations with dual execution paths:
    1. execute() - Pure function over raster types and plain values
    2. execute_json() - JSON argument processing

    Operations are discovered from `scs_lesion.operations` and registered by
    class name so that pipelines can be composed as JSON `@op` documents.
    """

    registry: ClassVar[Dict[str, Type["Operation"]]] = {}
    settings: ScsParams = Field(default_factory=ScsParams, exclude=True)

    model_config = ConfigDict(extra="allow", arbitrary_types_allowed=True)

    @classmethod
    def name(cls) -> str:
        return cls.__name__

    @classmethod
    @abstractmethod
    def description(cls) -> str:
        pass

    @classmethod
    @abstractmethod
    def inputSchema(cls) -> dict:
        pass

    @abstractmethod
    def execute(self, *args) -> Any:
        """Pure function: raster types / plain values → raster types / models"""
        pass

    @abstractmethod
    def execute_json(self, arguments: dict) -> Any:
        """JSON execution: processes JSON args, delegates to execute()"""
        pass

    @classmethod
    def register(cls, operation_cls: Type["Operation"]) -> None:
        if not issubclass(operation_cls, cls):
            raise ValueError(
                f"Cannot register {operation_cls}: Must be a subclass of Operation."
            )
        cls.registry[operation_cls.name()] = operation_cls
        logging.debug("Registered operation: %s", operation_cls.name())

    @classmethod
    def list_operations(cls) -> List[Type["Operation"]]:
        return list(cls.registry.values())

    @classmethod
    def get(cls, name: str) -> Optional[Type["Operation"]]:
        return cls.registry.get(name)

    @classmethod
    def process_json(cls, settings: ScsParams, json_data: Any) -> Any:
        """Class method for processing JSON with @op structures"""
        if isinstance(json_data, dict):
            if "@op" in json_data:
                op_name = json_data["@op"]
                op_args = json_data.get("args", {})

                operation_cls = cls.get(op_name)
                if not operation_cls:
                    raise ValueError(f"Unknown operation: {op_name}")

                required = operation_cls.inputSchema().get("required", [])
                missing = [key for key in required if key not in op_args]
                if missing:
                    raise ValueError(
                        f"{op_name} operation is missing required argument(s): {', '.join(missing)}"
                    )

                operation = operation_cls(settings=settings)
                return operation.execute_json(op_args)

            return {k: cls.process_json(settings, v) for k, v in json_data.items()}

        elif isinstance(json_data, list):
            # A list of @op documents is a sequence; a list of plain values is data
            if any(isinstance(item, dict) and "@op" in item for item in json_data):
                return [cls.process_json(settings, item) for item in json_data]
            return json_data

        else:
            return json_data

    def argument(self, arguments: dict, key: str, default: Any = None) -> Any:
        """Resolve one (possibly nested @op) argument."""
        if key not in arguments:
            return default
        return Operation.process_json(self.settings, arguments[key])

    # Conversion helpers between JSON transport and raster types
    @staticmethod
    def to_image(data: Any) -> RgbImage:
        """Convert a path or nested [row][col][channel] lists into an `RgbImage`."""
        if isinstance(data, RgbImage):
            return data
        if isinstance(data, (str, Path)):
            from scs_lesion.operations.dataset.load_image import read_image

            return read_image(data)
        if isinstance(data, (list, np.ndarray)):
            return RgbImage(data=np.asarray(data))
        raise TypeError(
            f"Cannot convert {type(data).__name__} to RgbImage; "
            "expected a file path, nested lists or an RgbImage"
        )

    @staticmethod
    def to_mask(data: Any) -> BinaryMask:
        """Convert a path or nested 0/1 lists into a `BinaryMask`."""
        if isinstance(data, BinaryMask):
            return data
        if isinstance(data, (str, Path)):
            from scs_lesion.operations.dataset.load_mask import read_mask

            return read_mask(data)
        if isinstance(data, (list, np.ndarray)):
            return BinaryMask(bits=np.asarray(data))
        raise TypeError(
            f"Cannot convert {type(data).__name__} to BinaryMask; "
            "expected a file path, nested lists or a BinaryMask"
        )

    @staticmethod
    def to_saliency(data: Any) -> SaliencyMap:
        if isinstance(data, SaliencyMap):
            return data
        if isinstance(data, (list, np.ndarray)):
            return SaliencyMap(values=np.asarray(data, dtype=np.float64))
        raise TypeError(
            f"Cannot convert {type(data).__name__} to SaliencyMap; "
            "expected nested lists or a SaliencyMap"
        )

    @staticmethod
    def to_color(data: Any) -> tuple:
        if isinstance(data, (list, tuple, np.ndarray)) and len(data) == 3:
            return tuple(float(channel) for channel in data)
        raise TypeError(f"Expected an RGB triple, got {data!r}")

    @staticmethod
    def to_plain(value: Any) -> Any:
        """Convert results to JSON-comparable Python data"""
        if isinstance(value, BinaryMask):
            return value.bits.astype(int).tolist()
        if isinstance(value, Raster):
            return value.array.tolist()
        if isinstance(value, BaseModel):
            return {
                key: Operation.to_plain(getattr(value, key))
                for key in type(value).model_fields
            }
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, np.generic):
            return value.item()
        if isinstance(value, (list, tuple)):
            return [Operation.to_plain(item) for item in value]
        if isinstance(value, (set, frozenset)):
            return sorted(Operation.to_plain(item) for item in value)
        if isinstance(value, dict):
            return {str(k): Operation.to_plain(v) for k, v in value.items()}
        return value
