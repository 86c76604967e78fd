"""ASCII and SVG pictures of mosaics."""
import logging
from typing import Dict, List, Tuple

import svgwrite

from mosaics.errors import InvalidMosaicError, UnknownFormatError
from mosaics.tiles import Layer, Mosaic, MosaicSystem, Port, Strand, Tile, tile_geometry, validate

logger = logging.getLogger("render")

FORMATS = ("ascii", "svg")

# 3x3 character blocks per corner tile; strands run between block corners.
_CORNER_GLYPHS: Dict[Tile, Tuple[str, str, str]] = {
    Tile.T0: ("   ", "   ", "   "),
    Tile.T1: ("\\  ", " ) ", "/  "),
    Tile.T2: ("   ", "   ", "/-\\"),
    Tile.T3: ("  /", " ( ", "  \\"),
    Tile.T4: ("\\_/", "   ", "   "),
    Tile.T5: ("\\  ", " \\ ", "  \\"),
    Tile.T6: ("  /", " / ", "/  "),
    Tile.T7: ("\\ /", ") (", "/ \\"),
    Tile.T8: ("\\_/", "   ", "/-\\"),
    Tile.T9: ("\\ /", " / ", "/ \\"),
    Tile.T10: ("\\ /", " \\ ", "/ \\"),
}

# Edge tiles: strands run between side midpoints.
_EDGE_GLYPHS: Dict[Tile, Tuple[str, str, str]] = {
    Tile.T0: ("   ", "   ", "   "),
    Tile.T1: ("   ", "-. ", " | "),
    Tile.T2: ("   ", " .-", " | "),
    Tile.T3: (" | ", " '-", "   "),
    Tile.T4: (" | ", "-' ", "   "),
    Tile.T5: ("   ", "---", "   "),
    Tile.T6: (" | ", " | ", " | "),
    Tile.T7: (" | ", "-.'", " | "),
    Tile.T8: (" | ", "'.-", " | "),
    Tile.T9: (" | ", "-|-", " | "),
    Tile.T10: (" | ", "---", " | "),
}


def _require_valid(m: Mosaic) -> None:
    report = validate(m)
    if not report.valid:
        raise InvalidMosaicError(report)


def render_ascii(m: Mosaic) -> str:
    _require_valid(m)
    glyphs = _CORNER_GLYPHS if m.system == MosaicSystem.CORNER else _EDGE_GLYPHS
    lines: List[str] = []
    for row in m.cells:
        for k in range(3):
            lines.append("".join(glyphs[tile][k] for tile in row).rstrip())
    return "\n".join(lines) + "\n"


_UNIT = 40
_GAP = 0.18

_PORT_XY = {
    Port.NW: (0.0, 0.0),
    Port.NE: (1.0, 0.0),
    Port.SE: (1.0, 1.0),
    Port.SW: (0.0, 1.0),
    Port.N: (0.5, 0.0),
    Port.E: (1.0, 0.5),
    Port.S: (0.5, 1.0),
    Port.W: (0.0, 0.5),
}


def _scaled(origin: Tuple[float, float], point: Tuple[float, float]) -> Tuple[float, float]:
    return (round(origin[0] + point[0] * _UNIT, 2), round(origin[1] + point[1] * _UNIT, 2))


def _draw_strand(dwg: svgwrite.Drawing, group, origin, strand: Strand) -> None:
    a, b = sorted(strand.endpoints, key=lambda port: port.value)
    (ax, ay), (bx, by) = _PORT_XY[a], _PORT_XY[b]
    straight = ax + bx == 1.0 and ay + by == 1.0
    if straight:
        if strand.layer == Layer.UNDER:
            mid = (ax + bx) / 2, (ay + by) / 2
            for end in ((ax, ay), (bx, by)):
                stop = (mid[0] + (end[0] - mid[0]) * _GAP * 2, mid[1] + (end[1] - mid[1]) * _GAP * 2)
                group.add(dwg.line(start=_scaled(origin, end), end=_scaled(origin, stop)))
        else:
            group.add(dwg.line(start=_scaled(origin, (ax, ay)), end=_scaled(origin, (bx, by))))
        return
    # Turning arcs bow towards the cell centre.
    control = _scaled(origin, (0.5, 0.5))
    start, end = _scaled(origin, (ax, ay)), _scaled(origin, (bx, by))
    path = dwg.path(d=f"M {start[0]} {start[1]}")
    path.push(f"Q {control[0]} {control[1]} {end[0]} {end[1]}")
    group.add(path)


def render_svg(m: Mosaic) -> str:
    _require_valid(m)
    dwg = svgwrite.Drawing(size=(m.cols * _UNIT, m.rows * _UNIT))
    grid = dwg.add(dwg.g(id="grid", stroke="#cccccc", fill="none"))
    for r, c in m.positions():
        grid.add(dwg.rect(insert=(c * _UNIT, r * _UNIT), size=(_UNIT, _UNIT)))
    for r, c in m.nonempty_cells():
        tile = m.tile((r, c))
        group = dwg.add(
            dwg.g(id=f"cell-{r}-{c}", class_=f"T{int(tile)}", stroke="black", fill="none", stroke_width=3)
        )
        for strand in tile_geometry(tile, m.system):
            _draw_strand(dwg, group, (c * _UNIT, r * _UNIT), strand)
    return dwg.tostring()


def render(m: Mosaic, fmt: str) -> str:
    if fmt == "ascii":
        return render_ascii(m)
    if fmt == "svg":
        return render_svg(m)
    raise UnknownFormatError(f"unknown render format {fmt!r}; use one of {', '.join(FORMATS)}")
