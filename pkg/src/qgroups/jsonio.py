"""JSON output: short containers on one line, floats with 17 significant digits."""

from __future__ import annotations

import json
import math

WIDTH = 100


def _float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    s = format(x, ".17g")
    if all(c not in s for c in ".en"):
        s += ".0"
    return s


def _compact(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_compact(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_compact(v) for v in obj) + "]"
    if hasattr(obj, "item"):        # numpy scalars
        return _compact(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pretty(obj, indent: int) -> str:
    flat = _compact(obj)
    if len(flat) + indent <= WIDTH or not isinstance(obj, (dict, list, tuple)) or not obj:
        return flat
    pad = " " * (indent + 1)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_pretty(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + _pretty(v, indent + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def dumps(obj) -> str:
    return _pretty(obj, 0) + "\n"
