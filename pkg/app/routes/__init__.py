"""
Command groups of the command line interface.

Each module adds its subcommands to the shared subparsers object through
``register(subparsers)`` and binds a handler with ``set_defaults``. A handler
takes the parsed namespace and returns a JSON-ready mapping.
"""
import json
from pathlib import Path
from typing import Any, List

import numpy as np
from pydantic import BaseModel

from app.exceptions import IoError, UsageError


def float_list(text: str) -> List[float]:
    """Comma separated floats, e.g. "0.5,0.25,0.25"."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise UsageError(f"Expected comma separated numbers, got '{text}'") from e


def int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise UsageError(f"Expected comma separated integers, got '{text}'") from e


def grid(text: str) -> np.ndarray:
    """A "start:stop:num" linspace or an explicit comma list."""
    if ":" not in text:
        return np.asarray(float_list(text))
    try:
        start, stop, num = text.split(":")
        return np.linspace(float(start), float(stop), int(num))
    except ValueError as e:
        raise UsageError(f"Expected start:stop:num, got '{text}'") from e


def json_arg(text: str) -> Any:
    """Inline JSON, or the contents of a file when the value starts with '@'."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise IoError(f"Cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"Invalid JSON argument: {e}") from e


def _entry(v: Any) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise UsageError(f"Matrix entries must be numbers or [re, im] pairs, got {v!r}")


def complex_array(data: Any, ndim: int) -> np.ndarray:
    """Nested JSON lists of depth ndim whose entries are numbers or [re, im] pairs."""
    if not isinstance(data, list) or not data:
        raise UsageError(f"Expected a non-empty {ndim}-dimensional array")
    if ndim == 1:
        return np.array([_entry(v) for v in data], dtype=complex)
    return np.array([complex_array(row, ndim - 1) for row in data], dtype=complex)


def matrix_arg(text: str) -> np.ndarray:
    return complex_array(json_arg(text), 2)


def vector_arg(text: str) -> np.ndarray:
    return complex_array(json_arg(text), 1)


def complex_arg(text: str) -> complex:
    """A complex number written as "re" or "re,im"."""
    parts = float_list(text)
    if len(parts) not in (1, 2):
        raise UsageError(f"Expected re or re,im, got '{text}'")
    return complex(parts[0], parts[1] if len(parts) == 2 else 0.0)


def jsonable(obj: Any) -> Any:
    """Convert reports, arrays and complex numbers into JSON values."""
    if isinstance(obj, BaseModel):
        return jsonable(obj.model_dump())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            if np.all(np.abs(obj.imag) <= 1e-12):
                return obj.real.tolist()
            return np.stack([obj.real, obj.imag], axis=-1).tolist()
        return obj.tolist()
    if isinstance(obj, complex):
        return obj.real if obj.imag == 0 else [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return jsonable(obj.item())
    return obj
