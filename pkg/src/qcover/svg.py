"""Minimal SVG scenes: filled polygons, segments and one caption line."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#f2c300", "#f07f00", "#2a6fdb", "#2e9e44")  # yellow, orange, blue, green
HULL_COLOR = "#444444"


@dataclass
class Scene:
    width: int = 600
    height: int = 600
    margin: float = 0.05
    items: list = field(default_factory=list)
    caption: str = ""

    def add(self, points, color: str | None = None, fill: bool = True, stroke_width: float = 1.5):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        color = PALETTE[len(self.items) % len(PALETTE)] if color is None else color
        self.items.append((pts, color, fill and len(pts) >= 3, stroke_width))
        return self

    def render(self) -> str:
        if not self.items:
            raise ValueError("empty scene")
        allpts = np.vstack([p for p, *_ in self.items])
        lo, hi = allpts.min(axis=0), allpts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        lo, span = lo - self.margin * span, span * (1 + 2 * self.margin)
        s = min(self.width / span[0], self.height / span[1])

        def xy(p):
            return f"{(p[0] - lo[0]) * s:.6f},{self.height - (p[1] - lo[1]) * s:.6f}"

        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height + 24}" '
               f'viewBox="0 0 {self.width} {self.height + 24}">']
        for pts, color, fill, sw in self.items:
            coords = " ".join(xy(p) for p in pts)
            if len(pts) == 2:
                out.append(f'  <polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{sw + 1}"/>')
            else:
                f = f'fill="{color}" fill-opacity="0.35"' if fill else 'fill="none"'
                out.append(f'  <polygon points="{coords}" {f} stroke="{color}" stroke-width="{sw}"/>')
        out.append(f'  <text x="6" y="{self.height + 18}" font-family="monospace" font-size="13">'
                   f"{escape(self.caption)}</text>")
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write(self, path) -> None:
        with open(path, "w") as f:
            f.write(self.render())
