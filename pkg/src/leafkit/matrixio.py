"""JSON matrix files.

A matrix file is a JSON object {"rows": r, "cols": c, "data": [...]} whose
data field is a row-major nested array with one [re, im] pair of doubles
per entry.  Serialization uses the shortest round-tripping decimal
representation, so emit -> parse is bit-exact and parse -> emit is
byte-identical modulo whitespace.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError, ShapeError


def _reject_constant(token: str):
    raise ParseError(f"non-finite JSON token {token!r} is not a valid matrix entry")


def matrix_to_obj(a: np.ndarray) -> dict:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m[:, None]
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={m.ndim}")
    data = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return {"rows": m.shape[0], "cols": m.shape[1], "data": data}


def obj_to_matrix(obj, source: str = "<matrix>") -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ParseError(f"{source}: missing field {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise ParseError(f"{source}: rows/cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows:
        raise ShapeError(f"{source}: data must be a list of {rows} rows")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ShapeError(f"{source}: row {r} must be a list of {cols} entries")
        for c, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ParseError(
                    f"{source}: entry ({r}, {c}) must be a [re, im] pair of numbers"
                )
            re, im = float(entry[0]), float(entry[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ParseError(f"{source}: entry ({r}, {c}) is not finite")
            out[r, c] = complex(re, im)
    return out


def parse_matrix_text(text: str, source: str = "<matrix>") -> np.ndarray:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return obj_to_matrix(obj, source)


def parse_matrix(path) -> np.ndarray:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{p}: cannot read file: {exc}") from exc
    return parse_matrix_text(text, str(p))


def emit_matrix(a: np.ndarray) -> str:
    return json.dumps(matrix_to_obj(a), sort_keys=True)


def write_matrix(a: np.ndarray, path) -> None:
    Path(path).write_text(emit_matrix(a) + "\n", encoding="utf-8")
