"""JSON matrix files: ``{"dim": n, "re": [[...]], "im": [[...]]}``.

Floats are written with ``repr`` (shortest round-tripping decimal, at most
17 significant digits), so a write/read cycle is bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch

__all__ = ["matrix_to_json", "matrix_from_json", "save_matrix", "load_matrix"]


def matrix_to_json(m) -> dict:
    """Encode a square complex matrix; ``im`` is omitted when it is identically zero."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    out = {"dim": int(m.shape[0]), "re": [[float(x) for x in row] for row in m.real]}
    if np.any(m.imag != 0):
        out["im"] = [[float(x) for x in row] for row in m.imag]
    return out


def matrix_from_json(obj: dict) -> np.ndarray:
    """Decode the object produced by :func:`matrix_to_json`."""
    try:
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise DimensionMismatch(f"declared dim {n} does not match entries {re.shape}/{im.shape}")
    return re + 1j * im


def save_matrix(path, m) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m)))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(json.loads(Path(path).read_text()))
