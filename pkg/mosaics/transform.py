"""
Edge -> corner conversion: rotate to a checkerboard corner mosaic, then push
each cap into the empty cell beside it.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from mosaics.errors import (
    InvalidMosaicError,
    NotCheckerboardError,
    PushInError,
    WrongSystemError,
)
from mosaics.tiles import (
    ARC_TILES,
    SIDE_STEP,
    Cell,
    Mosaic,
    MosaicSystem,
    Port,
    Strand,
    Tile,
    nonempty_count,
    point_of,
    tile_for_strands,
    tile_geometry,
    used_ports,
    validate,
)

logger = logging.getLogger("transform")

OPPOSITE = {Port.N: Port.S, Port.S: Port.N, Port.E: Port.W, Port.W: Port.E}
_STEP_TO_SIDE = {step: side for side, step in SIDE_STEP.items()}
_CORNER_AT = {(0, 0): Port.NW, (0, 1): Port.NE, (1, 0): Port.SW, (1, 1): Port.SE}


@dataclass(frozen=True)
class Cap:
    cells: Tuple[Cell, Cell]
    opening: Port


@dataclass(frozen=True)
class ConversionTrace:
    input_nonempty: int
    caps_found: int
    pushed: int
    output_nonempty: int

    def to_dict(self) -> dict:
        return {
            "input_nonempty": self.input_nonempty,
            "caps_found": self.caps_found,
            "pushed": self.pushed,
            "output_nonempty": self.output_nonempty,
        }


@dataclass(frozen=True)
class BoundCheck:
    t_upper: int
    caps: int
    tc_upper: int
    claimed_tc: int
    inequality_holds: bool
    border_caps_only: bool

    def to_dict(self) -> dict:
        return {
            "t_upper": self.t_upper,
            "caps": self.caps,
            "tC_upper": self.tc_upper,
            "claimed_tC": self.claimed_tc,
            "inequality_holds": self.inequality_holds,
            "border_caps_only": self.border_caps_only,
        }


def _require(m: Mosaic, system: MosaicSystem) -> None:
    if m.system != system:
        raise WrongSystemError(f"expected a {system.value} mosaic, got {m.system.value}")
    report = validate(m)
    if not report.valid:
        raise InvalidMosaicError(report)


def cap_between(m: Mosaic, a: Cell, b: Cell) -> Optional[Cap]:
    """The cap formed by orthogonal neighbours a and b, if they form one."""
    ta, tb = m.tile(a), m.tile(b)
    if ta not in ARC_TILES or tb not in ARC_TILES:
        return None
    side = _STEP_TO_SIDE.get((b[0] - a[0], b[1] - a[1]))
    if side is None:
        return None
    ports_a, ports_b = used_ports(ta, m.system), used_ports(tb, m.system)
    if side not in ports_a or OPPOSITE[side] not in ports_b:
        return None
    (open_a,) = ports_a - {side}
    (open_b,) = ports_b - {OPPOSITE[side]}
    if open_a != open_b:
        return None
    return Cap(tuple(sorted((a, b))), open_a)


def _cap_graph(m: Mosaic) -> Tuple[nx.Graph, Dict[Tuple[Cell, Cell], Cap]]:
    graph = nx.Graph()
    caps: Dict[Tuple[Cell, Cell], Cap] = {}
    for r, c in m.positions():
        for b in ((r, c + 1), (r + 1, c)):
            cap = cap_between(m, (r, c), b)
            if cap is not None:
                graph.add_edge(*cap.cells)
                caps[cap.cells] = cap
    return graph, caps


def _matching_size(graph: nx.Graph) -> int:
    return len(nx.max_weight_matching(graph, maxcardinality=True))


def find_caps(m: Mosaic) -> List[Cap]:
    """Maximum set of tile-disjoint caps, lexicographically first among ties."""
    _require(m, MosaicSystem.EDGE)
    graph, caps = _cap_graph(m)
    needed = _matching_size(graph)
    chosen: List[Cap] = []
    used: set = set()
    for edge in sorted(caps):
        if needed == 0:
            break
        if edge[0] in used or edge[1] in used:
            continue
        rest = graph.copy()
        rest.remove_nodes_from(used | set(edge))
        if 1 + _matching_size(rest) == needed:
            chosen.append(caps[edge])
            used.update(edge)
            needed -= 1
    return chosen


def rotation_image(cell: Cell, rows: int) -> Cell:
    r, c = cell
    return (r + c, rows - 1 - r + c)


def _checkerboard_layout(m: Mosaic) -> Tuple[Mosaic, Cell]:
    images = {rotation_image(cell, m.rows): m.tile(cell) for cell in m.nonempty_cells()}
    if not images:
        return Mosaic.empty(MosaicSystem.CORNER, m.rows, m.cols), (0, 0)
    offset = (min(r for r, _ in images), min(c for _, c in images))
    return Mosaic.from_cells(MosaicSystem.CORNER, images), offset


def rotate_to_checkerboard(m: Mosaic) -> Mosaic:
    _require(m, MosaicSystem.EDGE)
    return _checkerboard_layout(m)[0]


def is_checkerboard(m: Mosaic) -> bool:
    return len({(r + c) % 2 for r, c in m.nonempty_cells()}) <= 1


def checkerboard_to_edge(m: Mosaic) -> Mosaic:
    _require(m, MosaicSystem.CORNER)
    if not is_checkerboard(m):
        raise NotCheckerboardError("nonempty cells do not share one (row + col) parity")
    cells = m.nonempty_cells()
    if not cells:
        return Mosaic.empty(MosaicSystem.EDGE, m.rows, m.cols)
    u0 = min(i - j for i, j in cells)
    v0 = min(i + j for i, j in cells)
    assignment = {((i - j - u0) // 2, (i + j - v0) // 2): m.tile((i, j)) for i, j in cells}
    return Mosaic.from_cells(MosaicSystem.EDGE, assignment)


def _vertex_counts(grid: Dict[Cell, Tile]) -> Dict[tuple, int]:
    counts: Dict[tuple, int] = {}
    for cell, tile in grid.items():
        for port in used_ports(tile, MosaicSystem.CORNER):
            point = point_of(MosaicSystem.CORNER, cell, port)
            counts[point] = counts.get(point, 0) + 1
    return counts


def _place_small_loop(grid: Dict[Cell, Tile], target: Cell) -> bool:
    """Put the 2-tile corner loop on target and one neighbour, if there is room."""
    r, c = target
    options = (
        ((r, c), Tile.T3, (r, c + 1), Tile.T1),
        ((r, c), Tile.T2, (r + 1, c), Tile.T4),
        ((r, c - 1), Tile.T3, (r, c), Tile.T1),
        ((r - 1, c), Tile.T2, (r, c), Tile.T4),
    )
    counts = _vertex_counts(grid)
    for cell_a, tile_a, cell_b, tile_b in options:
        if cell_a in grid or cell_b in grid:
            continue
        points = {point_of(MosaicSystem.CORNER, cell_a, p) for p in used_ports(tile_a, MosaicSystem.CORNER)}
        if any(counts.get(p, 0) for p in points):
            continue
        grid[cell_a], grid[cell_b] = tile_a, tile_b
        return True
    return False


def _push_in(m: Mosaic, caps: Sequence[Tuple[Cell, Cell]]) -> Tuple[Mosaic, int]:
    grid: Dict[Cell, Tile] = m.assignment()
    pushed = 0
    for a, b in caps:
        ta, tb = grid.get(a, Tile.T0), grid.get(b, Tile.T0)
        if ta not in ARC_TILES or tb not in ARC_TILES:
            raise PushInError(f"cells {a} and {b} do not hold a cap")
        pts_a = {point_of(MosaicSystem.CORNER, a, p) for p in used_ports(ta, MosaicSystem.CORNER)}
        pts_b = {point_of(MosaicSystem.CORNER, b, p) for p in used_ports(tb, MosaicSystem.CORNER)}
        shared = pts_a & pts_b
        if len(shared) != 1:
            raise PushInError(f"cells {a} and {b} do not share exactly one vertex")
        (_, r1, c1), (_, r2, c2) = (pts_a - shared).pop(), (pts_b - shared).pop()
        if abs(r1 - r2) != 1 or abs(c1 - c2) != 1:
            raise PushInError(f"cap at {a}, {b} does not turn back")
        target = (min(r1, r2), min(c1, c2))
        arc = Strand(frozenset(_CORNER_AT[(r - target[0], c - target[1])] for r, c in ((r1, c1), (r2, c2))))
        existing = grid.get(target, Tile.T0)

        if existing == Tile.T0:
            del grid[a], grid[b]
            grid[target] = tile_for_strands([arc], MosaicSystem.CORNER)
            pushed += 1
            continue

        strands = tile_geometry(existing, MosaicSystem.CORNER)
        if len(strands) != 1:
            raise PushInError(f"push target {target} holds a non-mergeable tile T{int(existing)}")
        if strands[0].endpoints == arc.endpoints:
            # Both caps close one loop between them; it shrinks to two tiles.
            del grid[a], grid[b], grid[target]
            if not _place_small_loop(grid, target):
                raise PushInError(f"no room for the closed loop near {target}")
            pushed += 1
        elif strands[0].endpoints.isdisjoint(arc.endpoints):
            logger.debug(f"Cap at {a}, {b} would cross the arc pushed into {target}; left in place")
        else:
            raise PushInError(f"push target {target} holds a non-mergeable tile T{int(existing)}")

    result = Mosaic.from_cells(MosaicSystem.CORNER, grid) if grid else Mosaic.empty(MosaicSystem.CORNER, 1, 1)
    report = validate(result)
    if not report.valid:
        raise PushInError(f"pushing caps broke connectivity: {report.violations[0].reason}")
    return result, pushed


def push_in_caps(m: Mosaic, caps: Sequence[Tuple[Cell, Cell]]) -> Mosaic:
    if not caps:
        return m
    return _push_in(m, caps)[0]


def convert(m: Mosaic) -> Tuple[Mosaic, ConversionTrace]:
    caps = find_caps(m)
    rotated, (dr, dc) = _checkerboard_layout(m)
    images = []
    for cap in caps:
        a, b = (rotation_image(cell, m.rows) for cell in cap.cells)
        images.append(((a[0] - dr, a[1] - dc), (b[0] - dr, b[1] - dc)))
    result, pushed = _push_in(rotated, images) if images else (rotated, 0)
    trace = ConversionTrace(nonempty_count(m), len(caps), pushed, nonempty_count(result))
    logger.info(
        f"Converted {trace.input_nonempty}-tile edge mosaic: {trace.caps_found} caps, "
        f"{trace.pushed} pushed, {trace.output_nonempty} corner tiles"
    )
    return result, trace


def _border_caps_only(m: Mosaic, caps: List[Cap]) -> bool:
    cells = m.nonempty_cells()
    if not cells:
        return True
    capped = {cell: cap for cap in caps for cell in cap.cells}
    top, bottom = min(r for r, _ in cells), max(r for r, _ in cells)
    left, right = min(c for _, c in cells), max(c for _, c in cells)
    lines = (
        (lambda cell: cell[0] == top),
        (lambda cell: cell[0] == bottom),
        (lambda cell: cell[1] == left),
        (lambda cell: cell[1] == right),
    )
    for on_line in lines:
        for cell in filter(on_line, cells):
            cap = capped.get(cell)
            if cap is None or not all(on_line(other) for other in cap.cells):
                return False
    return True


def verify_bound(m: Mosaic, claimed_tc: int) -> BoundCheck:
    caps = find_caps(m)
    converted, _ = convert(m)
    t_upper = nonempty_count(m)
    return BoundCheck(
        t_upper=t_upper,
        caps=len(caps),
        tc_upper=nonempty_count(converted),
        claimed_tc=claimed_tc,
        inequality_holds=claimed_tc + len(caps) <= t_upper,
        border_caps_only=_border_caps_only(m, caps),
    )
