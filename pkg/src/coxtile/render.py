"""SVG output for realised tilings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

from .tilings import RealizedPolygon, TileKind

PALETTES = {
    "default": {
        TileKind.RHOMBUS: "#f4e3b5",
        TileKind.HEXAGON: "#8fb8de",
        TileKind.OCTAGON: "#e49a8c",
        TileKind.GROUPED: "#9cd3a8",
    },
    "mono": {kind: "#ffffff" for kind in TileKind},
}


@dataclass(frozen=True)
class RenderConfig:
    scale: float = 80.0
    stroke_width: float = 1.5
    palette: dict = field(default_factory=lambda: dict(PALETTES["default"]))
    show_labels: bool = False
    regular_mode: bool = False
    margin: float = 10.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        missing = [k for k in TileKind if k not in self.palette]
        if missing:
            raise ValueError(f"palette lacks colours for {', '.join(map(str, missing))}")

    @classmethod
    def named(cls, palette: str = "default", **kwargs) -> "RenderConfig":
        if palette not in PALETTES:
            raise ValueError(f"unknown palette {palette!r}")
        return cls(palette=dict(PALETTES[palette]), **kwargs)


def _num(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def to_svg(polygons: Sequence[RealizedPolygon], config: RenderConfig = RenderConfig(),
           outline: Sequence[tuple[float, float]] | None = None) -> str:
    """Standalone SVG 1.1 document, one ``path`` per polygon.

    Coordinates are flipped so that y grows downward and printed with six
    decimals; identical input gives identical bytes.
    """
    s = config.scale
    pts = [(x * s, -y * s) for p in polygons for x, y in p.vertices]
    if outline:
        pts += [(x * s, -y * s) for x, y in outline]
    if pts:
        min_x = min(x for x, _ in pts) - config.margin
        min_y = min(y for _, y in pts) - config.margin
        width = max(x for x, _ in pts) + config.margin - min_x
        height = max(y for _, y in pts) + config.margin - min_y
    else:
        min_x = min_y = 0.0
        width = height = 2 * config.margin

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="{_num(min_x)} {_num(min_y)} {_num(width)} {_num(height)}">',
    ]
    sw = _num(config.stroke_width)
    for p in polygons:
        d = " ".join(
            f"{'M' if k == 0 else 'L'} {_num(x * s)} {_num(-y * s)}" for k, (x, y) in enumerate(p.vertices)
        )
        out.append(
            f'<path class="{p.kind.value}" d="{d} Z" fill="{config.palette[p.kind]}" '
            f'stroke="#000000" stroke-width="{sw}" stroke-linejoin="round"/>'
        )
        if config.show_labels:
            cx = sum(x for x, _ in p.vertices) / len(p.vertices) * s
            cy = -sum(y for _, y in p.vertices) / len(p.vertices) * s
            text = escape(",".join(str(v) for v in p.labels))
            out.append(
                f'<text x="{_num(cx)}" y="{_num(cy)}" font-size="{_num(s / 6)}" '
                f'text-anchor="middle" dominant-baseline="middle">{text}</text>'
            )
    if outline:
        points = " ".join(f"{_num(x * s)},{_num(-y * s)}" for x, y in outline)
        dash = ' stroke-dasharray="4 3"' if config.regular_mode else ""
        out.append(f'<polygon class="outline" points="{points}" '
                   f'fill="none" stroke="#000000" stroke-width="{_num(2 * config.stroke_width)}"{dash}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
