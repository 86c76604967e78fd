"""
Tiles, strand geometry and the mosaic value type for both tile systems.

Edge tiles carry their connection points at edge midpoints (N, E, S, W).
Corner tiles carry them at cell corners (NE, SE, SW, NW); every corner tile is
the matching edge tile rotated a eighth turn clockwise, so the corner geometry
is derived from the edge table through N->NE, E->SE, S->SW, W->NW.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from mosaics.errors import MosaicParseError

logger = logging.getLogger("tiles")

Cell = Tuple[int, int]


class Tile(IntEnum):
    T0 = 0
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7
    T8 = 8
    T9 = 9
    T10 = 10

    @property
    def is_crossing(self) -> bool:
        return self in (Tile.T9, Tile.T10)


ARC_TILES = (Tile.T1, Tile.T2, Tile.T3, Tile.T4)
NONEMPTY_TILES = tuple(Tile(i) for i in range(1, 11))


class MosaicSystem(str, Enum):
    EDGE = "edge"
    CORNER = "corner"


class Port(str, Enum):
    N = "N"
    E = "E"
    S = "S"
    W = "W"
    NE = "NE"
    SE = "SE"
    SW = "SW"
    NW = "NW"


class Layer(str, Enum):
    ONLY = "only"
    OVER = "over"
    UNDER = "under"


@dataclass(frozen=True)
class Strand:
    endpoints: FrozenSet[Port]
    layer: Layer = Layer.ONLY

    def other(self, port: Port) -> Port:
        (rest,) = self.endpoints - {port}
        return rest


def _strand(a: Port, b: Port, layer: Layer = Layer.ONLY) -> Strand:
    return Strand(frozenset((a, b)), layer)


N, E, S, W = Port.N, Port.E, Port.S, Port.W
NE, SE, SW, NW = Port.NE, Port.SE, Port.SW, Port.NW

EDGE_PORTS = (N, E, S, W)
CORNER_PORTS = (NE, SE, SW, NW)

# Counterclockwise port cycles; crossings are read in this order.
CCW_PORTS = {
    MosaicSystem.EDGE: (N, W, S, E),
    MosaicSystem.CORNER: (NE, NW, SW, SE),
}

# One clockwise quarter turn.
_QUARTER_TURN = {N: E, E: S, S: W, W: N, NE: SE, SE: SW, SW: NW, NW: NE}

EDGE_TO_CORNER = {N: NE, E: SE, S: SW, W: NW}

# Unit step from a cell towards a side.
SIDE_STEP = {N: (-1, 0), E: (0, 1), S: (1, 0), W: (0, -1)}

_EDGE_GEOMETRY: Dict[Tile, Tuple[Strand, ...]] = {
    Tile.T0: (),
    Tile.T1: (_strand(W, S),),
    Tile.T2: (_strand(S, E),),
    Tile.T3: (_strand(E, N),),
    Tile.T4: (_strand(N, W),),
    Tile.T5: (_strand(W, E),),
    Tile.T6: (_strand(N, S),),
    Tile.T7: (_strand(W, S), _strand(N, E)),
    Tile.T8: (_strand(S, E), _strand(N, W)),
    Tile.T9: (_strand(N, S, Layer.OVER), _strand(W, E, Layer.UNDER)),
    Tile.T10: (_strand(N, S, Layer.UNDER), _strand(W, E, Layer.OVER)),
}


def _map_strands(strands: Iterable[Strand], mapping: Dict[Port, Port]) -> Tuple[Strand, ...]:
    return tuple(Strand(frozenset(mapping[p] for p in s.endpoints), s.layer) for s in strands)


_CORNER_GEOMETRY: Dict[Tile, Tuple[Strand, ...]] = {
    tile: _map_strands(strands, EDGE_TO_CORNER) for tile, strands in _EDGE_GEOMETRY.items()
}


def tile_geometry(tile: Tile, system: MosaicSystem) -> List[Strand]:
    table = _EDGE_GEOMETRY if system == MosaicSystem.EDGE else _CORNER_GEOMETRY
    return list(table[Tile(tile)])


def used_ports(tile: Tile, system: MosaicSystem) -> FrozenSet[Port]:
    return frozenset(p for s in tile_geometry(tile, system) for p in s.endpoints)


def strand_at(tile: Tile, system: MosaicSystem, port: Port) -> Optional[Strand]:
    for strand in tile_geometry(tile, system):
        if port in strand.endpoints:
            return strand
    return None


_LOOKUP: Dict[MosaicSystem, Dict[FrozenSet[Strand], Tile]] = {
    MosaicSystem.EDGE: {frozenset(v): k for k, v in _EDGE_GEOMETRY.items()},
    MosaicSystem.CORNER: {frozenset(v): k for k, v in _CORNER_GEOMETRY.items()},
}


def tile_for_strands(strands: Iterable[Strand], system: MosaicSystem) -> Optional[Tile]:
    return _LOOKUP[system].get(frozenset(strands))


def rotate_tile(tile: Tile, system: MosaicSystem, quarter_turns: int = 1) -> Tile:
    """Tile showing the picture of `tile` turned clockwise by quarter turns."""
    strands: Tuple[Strand, ...] = tuple(tile_geometry(tile, system))
    for _ in range(quarter_turns % 4):
        strands = _map_strands(strands, _QUARTER_TURN)
    return _LOOKUP[system][frozenset(strands)]


def hugged_side(tile: Tile) -> Optional[Port]:
    """Side of the cell a corner-system single-arc tile runs along (T2 -> S)."""
    if tile not in ARC_TILES:
        return None
    (strand,) = _CORNER_GEOMETRY[tile]
    a, b = sorted(p.value for p in strand.endpoints)
    common = set(a) & set(b)
    return Port(common.pop())


def point_of(system: MosaicSystem, cell: Cell, port: Port) -> Tuple[str, int, int]:
    """Global connection point a port of a cell sits on.

    Corner system: lattice vertex ("v", row, col). Edge system: horizontal
    edge ("h", row, col) or vertical edge ("e", row, col) midpoint.
    """
    r, c = cell
    if system == MosaicSystem.CORNER:
        dr, dc = {NW: (0, 0), NE: (0, 1), SW: (1, 0), SE: (1, 1)}[port]
        return ("v", r + dr, c + dc)
    if port == N:
        return ("h", r, c)
    if port == S:
        return ("h", r + 1, c)
    if port == W:
        return ("e", r, c)
    return ("e", r, c + 1)


@dataclass(frozen=True)
class Mosaic:
    system: MosaicSystem
    rows: int
    cols: int
    cells: Tuple[Tuple[Tile, ...], ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("mosaic dimensions must be positive")
        if len(self.cells) != self.rows or any(len(row) != self.cols for row in self.cells):
            raise ValueError("cell grid does not match the declared dimensions")

    @classmethod
    def from_rows(cls, system, rows: Iterable[Iterable[int]]) -> "Mosaic":
        grid = tuple(tuple(Tile(t) for t in row) for row in rows)
        return cls(MosaicSystem(system), len(grid), len(grid[0]) if grid else 0, grid)

    @classmethod
    def empty(cls, system, rows: int, cols: int) -> "Mosaic":
        return cls.from_rows(system, [[0] * cols for _ in range(rows)])

    @classmethod
    def from_cells(cls, system, assignment: Dict[Cell, Tile], crop: bool = True) -> "Mosaic":
        """Build the smallest mosaic holding the given nonempty cells."""
        filled = {cell: t for cell, t in assignment.items() if t != Tile.T0}
        if not filled:
            return cls.empty(system, 1, 1)
        r0 = min(r for r, _ in filled) if crop else 0
        c0 = min(c for _, c in filled) if crop else 0
        rows = max(r for r, _ in filled) - r0 + 1
        cols = max(c for _, c in filled) - c0 + 1
        grid = [[0] * cols for _ in range(rows)]
        for (r, c), t in filled.items():
            grid[r - r0][c - c0] = t
        return cls.from_rows(system, grid)

    def tile(self, cell: Cell) -> Tile:
        r, c = cell
        if 0 <= r < self.rows and 0 <= c < self.cols:
            return self.cells[r][c]
        return Tile.T0

    def positions(self) -> Iterator[Cell]:
        for r in range(self.rows):
            for c in range(self.cols):
                yield (r, c)

    def nonempty_cells(self) -> List[Cell]:
        return [cell for cell in self.positions() if self.tile(cell) != Tile.T0]

    def assignment(self) -> Dict[Cell, Tile]:
        return {cell: self.tile(cell) for cell in self.nonempty_cells()}


@dataclass(frozen=True)
class Violation:
    location: Tuple
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"location": list(v.location), "reason": v.reason} for v in self.violations],
        }


def endpoint_counts(m: Mosaic) -> Counter:
    counts: Counter = Counter()
    for cell in m.nonempty_cells():
        for port in used_ports(m.tile(cell), m.system):
            counts[point_of(m.system, cell, port)] += 1
    return counts


def _on_outer_boundary(m: Mosaic, point: Tuple[str, int, int]) -> bool:
    kind, r, c = point
    if kind == "h":
        return r == 0 or r == m.rows
    return c == 0 or c == m.cols


def validate(m: Mosaic) -> ValidationReport:
    violations: List[Violation] = []
    for point, count in sorted(endpoint_counts(m).items()):
        if m.system == MosaicSystem.EDGE:
            if _on_outer_boundary(m, point):
                violations.append(Violation(point, "connection point on the outer boundary"))
            elif count != 2:
                violations.append(Violation(point, "unmatched connection point"))
        elif count == 4:
            violations.append(Violation(point, "four strand ends meet at one vertex"))
        elif count != 2:
            violations.append(Violation(point, f"vertex has {count} strand ends"))
    return ValidationReport(tuple(violations))


def nonempty_count(m: Mosaic) -> int:
    return len(m.nonempty_cells())


def occupancy(m: Mosaic) -> Set[Cell]:
    return set(m.nonempty_cells())


def rotate_mosaic(m: Mosaic, quarter_turns: int = 1) -> Mosaic:
    """Turn the whole mosaic clockwise; tiles are re-picked so strands follow."""
    result = m
    for _ in range(quarter_turns % 4):
        rows, cols = result.cols, result.rows
        grid = [[Tile.T0] * cols for _ in range(rows)]
        for r, c in result.positions():
            grid[c][result.rows - 1 - r] = rotate_tile(result.tile((r, c)), result.system)
        result = Mosaic.from_rows(result.system, grid)
    return result


def mirror_mosaic(m: Mosaic) -> Mosaic:
    swap = {Tile.T9: Tile.T10, Tile.T10: Tile.T9}
    return Mosaic.from_rows(m.system, [[swap.get(t, t) for t in row] for row in m.cells])


def parse_mosaic(text: str) -> Mosaic:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MosaicParseError("missing header", line=1)
    header = lines[0].split(" ")
    if len(header) != 3:
        raise MosaicParseError("header must be '<system> <rows> <cols>'", line=1)
    system_name, rows_raw, cols_raw = header
    try:
        system = MosaicSystem(system_name)
    except ValueError:
        raise MosaicParseError(f"unknown system {system_name!r}", line=1)
    try:
        rows, cols = int(rows_raw), int(cols_raw)
    except ValueError:
        raise MosaicParseError("rows and cols must be integers", line=1)
    if rows < 1 or cols < 1:
        raise MosaicParseError("rows and cols must be positive", line=1)
    if len(lines) - 1 != rows:
        raise MosaicParseError(f"expected {rows} rows, found {len(lines) - 1}", line=len(lines))
    grid = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split(" ")
        if len(tokens) != cols:
            raise MosaicParseError(f"expected {cols} tiles, found {len(tokens)}", line=lineno)
        row = []
        for token in tokens:
            if token == ".":
                token = "0"
            if not (token.isascii() and token.isdigit()) or int(token) > 10:
                raise MosaicParseError(f"tile token {token!r} outside 0..10", line=lineno)
            row.append(int(token))
        grid.append(row)
    return Mosaic.from_rows(system, grid)


def serialize_mosaic(m: Mosaic) -> str:
    lines = [f"{m.system.value} {m.rows} {m.cols}"]
    lines.extend(" ".join(str(int(t)) for t in row) for row in m.cells)
    return "\n".join(lines) + "\n"
