"""Bit-exact JSON encoding of trial inputs.

Arrays become ``{"array": {"shape": [...], "re": [...], "im": [...]}}`` with
flattened entries written by ``repr``; scalars, strings and lists pass through.
Non-finite array entries are written as the strings ``"inf"``, ``"-inf"``,
``"nan"``; a non-finite scalar becomes ``{"float": "inf"}`` so that it cannot be
confused with a string input.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["decode", "decode_inputs", "encode", "encode_inputs", "json_float"]


def json_float(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _from_json_float(x):
    if isinstance(x, str):
        return float(x)
    return x


def encode(value):
    if isinstance(value, np.ndarray):
        arr = np.asarray(value)
        out = {"shape": list(arr.shape), "re": [json_float(x) for x in arr.real.ravel()]}
        if np.iscomplexobj(arr):
            out["im"] = [json_float(x) for x in arr.imag.ravel()]
        return {"array": out}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        out = json_float(value)
        return {"float": out} if isinstance(out, str) else out
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode(value):
    if isinstance(value, dict):
        if set(value) == {"array"}:
            spec = value["array"]
            re = np.array([_from_json_float(x) for x in spec["re"]], dtype=float)
            if "im" in spec:
                arr = re + 1j * np.array([_from_json_float(x) for x in spec["im"]], dtype=float)
            else:
                arr = re
            return arr.reshape(spec["shape"])
        if set(value) == {"float"}:
            return float(value["float"])
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


def encode_inputs(inputs: dict) -> dict:
    return {k: encode(v) for k, v in inputs.items()}


def decode_inputs(obj: dict) -> dict:
    return {k: decode(v) for k, v in obj.items()}
