"""Deterministic file output helpers.

All structured output goes through :func:`canonical_json_dumps`: key order is
insertion order, floats are rendered with 17 significant digits (lossless for
IEEE doubles), and the result is byte-stable across runs.  Writes are atomic
(temp file in the target directory, then rename).
"""

from __future__ import annotations

import json
import math
import os
import tempfile


def format_float(value: float) -> str:
    """Render a float with 17 significant digits, always as a JSON float."""
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot be serialized")
    s = format(value, ".17g")
    if not any(c in s for c in ".eE"):
        s += ".0"
    return s


def _encode(obj, parts):
    if obj is None or obj is True or obj is False:
        parts.append(json.dumps(obj))
    elif isinstance(obj, bool):  # pragma: no cover - caught above
        parts.append(json.dumps(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            if not isinstance(k, str):
                raise TypeError(f"JSON object keys must be strings, got {type(k)}")
            parts.append(json.dumps(k, ensure_ascii=True))
            parts.append(": ")
            _encode(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(", ")
            _encode(v, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)} to canonical JSON")


def canonical_json_dumps(obj) -> str:
    parts = []
    _encode(obj, parts)
    parts.append("\n")
    return "".join(parts)


def atomic_write_text(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pairtomo-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
