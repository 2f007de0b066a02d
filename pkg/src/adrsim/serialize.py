"""Decimal-exact structured text serialization.

Scenario files, policy weight files, and benchmark summaries are written
as JSON with every float rendered at 17 significant digits, which is
enough to round-trip IEEE-754 binary64 exactly.  The standard library
encoder does not expose float formatting, so a small emitter lives here;
reading back uses plain ``json.loads``.
"""

from __future__ import annotations

import json
import math
from typing import Any

__all__ = ["dumps_17g", "dump_17g", "loads", "load", "format_17g"]


def format_17g(value: float) -> str:
    """One float as a 17-significant-digit decimal token.

    Every IEEE double parses back to the identical bit pattern; used
    for both the structured documents here and tabular cells elsewhere.

    Raises:
        ValueError: on NaN or infinity.
    """
    if math.isnan(value) or math.isinf(value):
        raise ValueError(f"non-finite float {value!r} cannot be serialized")
    text = format(value, ".17g")
    # Keep the token recognizable as a float on the way back in.
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


_format_float = format_17g


def _emit(node: Any, parts: list[str], indent: int, pretty: bool) -> None:
    pad = "  " * (indent + 1) if pretty else ""
    close_pad = "  " * indent if pretty else ""
    sep = ",\n" if pretty else ", "
    if isinstance(node, dict):
        if not node:
            parts.append("{}")
            return
        parts.append("{\n" if pretty else "{")
        for i, (key, value) in enumerate(node.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be str, got {type(key).__name__}")
            parts.append(f"{pad}{json.dumps(key)}: ")
            _emit(value, parts, indent + 1, pretty)
            parts.append(sep if i < len(node) - 1 else ("\n" if pretty else ""))
        parts.append(f"{close_pad}}}")
    elif isinstance(node, (list, tuple)):
        if not node:
            parts.append("[]")
            return
        # Flat numeric runs stay on one line regardless of pretty mode;
        # weight matrices would otherwise explode the line count.
        flat = all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in node)
        if flat or not pretty:
            parts.append("[")
            parts.append(", ".join(_scalar(v) if not isinstance(v, (dict, list, tuple)) else _inline(v) for v in node))
            parts.append("]")
        else:
            parts.append("[\n")
            for i, value in enumerate(node):
                parts.append(pad)
                _emit(value, parts, indent + 1, pretty)
                parts.append(sep if i < len(node) - 1 else "\n")
            parts.append(f"{close_pad}]")
    else:
        parts.append(_scalar(node))


def _scalar(node: Any) -> str:
    if isinstance(node, bool):
        return "true" if node else "false"
    if isinstance(node, float):
        return _format_float(node)
    if isinstance(node, int):
        return str(node)
    if isinstance(node, str):
        return json.dumps(node)
    if node is None:
        return "null"
    raise TypeError(f"cannot serialize {type(node).__name__}")


def _inline(node: Any) -> str:
    parts: list[str] = []
    _emit(node, parts, 0, pretty=False)
    return "".join(parts)


def dumps_17g(document: Any, pretty: bool = True) -> str:
    """Render a JSON document with floats at 17 significant digits.

    Args:
        document: Nested dicts/lists/scalars to serialize.
        pretty: Indent containers (flat numeric lists stay on one line).

    Returns:
        The JSON text, newline terminated.
    """
    parts: list[str] = []
    _emit(document, parts, 0, pretty)
    return "".join(parts) + "\n"


def dump_17g(document: Any, path, pretty: bool = True) -> None:
    """Write ``dumps_17g(document)`` to ``path``."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_17g(document, pretty))


def loads(text: str) -> Any:
    """Parse JSON text (floats recover their exact binary64 values)."""
    return json.loads(text)


def load(path) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
