"""Polygon documents: JSON ``{"vertices": [[x, y], ...], "name": ...}``, a bare
bracketed list, or one ``x y`` (or ``x, y``) pair per line. Floats are written
with 17 significant digits so that a save/load round trip is bit-exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import ConvexPolygon, GeometryError, shoelace


class DocumentError(ValueError):
    """Raised for unreadable polygon documents; the message names the offending field."""


@dataclass(frozen=True)
class PolygonDocument:
    vertices: np.ndarray
    name: str | None = None

    def polygon(self) -> ConvexPolygon:
        """Parse as a convex polygon, reversing clockwise input."""
        v = self.vertices
        if len(v) >= 3 and shoelace(v) < 0:
            v = v[::-1]
        try:
            return ConvexPolygon(v)
        except GeometryError as e:
            raise DocumentError(f"field 'vertices': not a strictly convex polygon ({e})") from None


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _pairs(obj, field: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise DocumentError(f"field '{field}': expected a non-empty list of [x, y] pairs")
    out = []
    for k, p in enumerate(obj):
        if (not isinstance(p, (list, tuple)) or len(p) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p)):
            raise DocumentError(f"field '{field}[{k}]': expected a pair of numbers, got {p!r}")
        out.append([float(p[0]), float(p[1])])
    arr = np.array(out)
    if not np.all(np.isfinite(arr)):
        raise DocumentError(f"field '{field}': non-finite coordinate")
    return arr


def parse_document(text: str) -> PolygonDocument:
    s = text.strip()
    if not s:
        raise DocumentError("field 'vertices': empty document")
    if s[0] in "[{":
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as e:
            raise DocumentError(f"field 'vertices': malformed JSON ({e.msg} at line {e.lineno})") from None
        if isinstance(obj, dict):
            if "vertices" not in obj:
                raise DocumentError("field 'vertices': missing")
            name = obj.get("name")
            if name is not None and not isinstance(name, str):
                raise DocumentError("field 'name': expected a string")
            return PolygonDocument(_pairs(obj["vertices"], "vertices"), name)
        return PolygonDocument(_pairs(obj, "vertices"))
    rows = []
    for lineno, line in enumerate(s.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p for p in re.split(r"[,\s]+", line) if p]
        try:
            if len(parts) != 2:
                raise ValueError
            rows.append([float(parts[0]), float(parts[1])])
        except ValueError:
            raise DocumentError(f"field 'vertices' (line {lineno}): expected two numbers, got {line!r}") from None
    arr = np.array(rows)
    if not np.all(np.isfinite(arr)):
        raise DocumentError("field 'vertices': non-finite coordinate")
    return PolygonDocument(arr)


def load_document(path) -> PolygonDocument:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    return parse_document(text)


def load_polygon(path) -> ConvexPolygon:
    return load_document(path).polygon()


def dump_document(vertices, name: str | None = None) -> str:
    v = [[fmt(x), fmt(y)] for x, y in np.asarray(vertices, dtype=float)]
    body = ",\n    ".join(f"[{x}, {y}]" for x, y in v)
    head = f'  "name": {json.dumps(name)},\n' if name is not None else ""
    return "{\n" + head + f'  "vertices": [\n    {body}\n  ]\n' + "}\n"


def save_document(path, vertices, name: str | None = None) -> None:
    Path(path).write_text(dump_document(vertices, name))
