"""Minimal JSON emitter with a fixed float format.

Every float is written with 17 significant digits so output is reproducible
across runs and machines, and parsing it back recovers the double exactly.
Parsing is delegated to the standard library.
"""

from __future__ import annotations

import json
import math
from typing import Any

__all__ = ["dumps", "loads", "fmt_float"]


def fmt_float(x: float) -> str:
    """Render one finite double with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite value has no JSON form")
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (json.dumps(str(k)) + ":" + dumps(v) for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str) -> Any:
    return json.loads(text)
