"""Canonical JSON emission: complex numbers as [re, im], floats at 15
significant digits, stable key order.  Byte-identical output for identical
input is a CLI contract, so we render the text ourselves instead of relying
on json.dumps float repr."""

from __future__ import annotations

import json
import numbers

import numpy as np

SCHEMA_TAG = "sector-kit/1"


def _format_float(x: float) -> str:
    if x != x:
        raise ValueError("NaN is not representable in sector-kit JSON")
    if x in (float("inf"), float("-inf")):
        raise ValueError("Inf is not representable in sector-kit JSON")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    s = "%.15g" % x
    # keep a numeric token that json parsers round-trip as float
    if "e" not in s and "E" not in s and "." not in s:
        s += ".0"
    return s


def canonicalize(obj):
    """Reduce an object tree to dict/list/str/int/float, complex -> [re, im]."""
    if isinstance(obj, dict):
        return {str(k): canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [canonicalize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, numbers.Rational):
        # Fractions print exactly when integral, else as float
        if obj.denominator == 1:
            return int(obj.numerator)
        return float(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _render(obj) -> str:
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(k)}:{_render(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, list):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps(obj) -> str:
    return _render(canonicalize(obj))


def loads(text: str):
    return json.loads(text)
