"""Space-time pictures: time runs downward, space rightward, one colour per state."""
from __future__ import annotations

import colorsys
from typing import Sequence

from .rule import Rule, evolve

__all__ = ["palette", "spacetime", "to_ppm", "to_svg"]

# 0 white, 1 red, 2 black, then a few easily told apart
_BASE = [
    (255, 255, 255),
    (220, 30, 30),
    (0, 0, 0),
    (40, 90, 220),
    (40, 170, 60),
    (240, 190, 20),
    (150, 60, 190),
    (20, 190, 200),
]


def palette(n: int) -> list[tuple[int, int, int]]:
    colors = list(_BASE[:n])
    k = 0
    while len(colors) < n:
        hue = (k * 0.618033988749895) % 1.0
        r, g, b = colorsys.hsv_to_rgb(hue, 0.65, 0.85 if k % 2 else 0.6)
        colors.append((round(r * 255), round(g * 255), round(b * 255)))
        k += 1
    return colors


def spacetime(rule: Rule, initial: Sequence[int], steps: int, repeat_width: int = 1) -> list[tuple[int, ...]]:
    """Trajectory of the periodic configuration ``initial^inf``, shown over ``repeat_width`` periods."""
    if repeat_width < 1:
        raise ValueError("repeat_width must be >= 1")
    return [row * repeat_width for row in evolve(rule, initial, steps)]


def to_ppm(grid: Sequence[Sequence[int]], n: int, scale: int = 8) -> bytes:
    """Binary PPM (P6)."""
    colors = palette(n)
    height, width = len(grid), len(grid[0])
    body = bytearray()
    for row in grid:
        line = bytearray()
        for v in row:
            line.extend(bytes(colors[v]) * scale)
        body.extend(bytes(line) * scale)
    header = f"P6\n{width * scale} {height * scale}\n255\n".encode("ascii")
    return header + bytes(body)


def to_svg(grid: Sequence[Sequence[int]], n: int, scale: int = 8) -> str:
    colors = palette(n)
    height, width = len(grid), len(grid[0])
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width * scale}" height="{height * scale}" '
        f'viewBox="0 0 {width * scale} {height * scale}" shape-rendering="crispEdges">'
    ]
    for i, row in enumerate(grid):
        for j, v in enumerate(row):
            r, g, b = colors[v]
            out.append(
                f'<rect x="{j * scale}" y="{i * scale}" width="{scale}" height="{scale}" '
                f'fill="#{r:02x}{g:02x}{b:02x}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
