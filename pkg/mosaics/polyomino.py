"""
Corner-connected polyominoes (cells joined by edges or corners), counted up
to rotation and translation, plus tri-state occupancy masks.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from mosaics.errors import EmptyShapeError, MaskParseError, MosaicParseError, SearchRangeError
from mosaics.tiles import Cell

logger = logging.getLogger("polyomino")

KING_STEPS = tuple((dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if (dr, dc) != (0, 0))
MAX_GROWTH_CELLS = 12

GROWTH_MODES = ("l_triomino", "exhaustive")


def _normalize(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    cells = list(cells)
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


def _turn(cells: Iterable[Cell]) -> List[Cell]:
    """Quarter turn clockwise, up to translation."""
    return [(c, -r) for r, c in cells]


@dataclass(frozen=True, order=True)
class Polyomino:
    cells: Tuple[Cell, ...]

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def rows(self) -> int:
        return max(r for r, _ in self.cells) + 1

    @property
    def cols(self) -> int:
        return max(c for _, c in self.cells) + 1

    def cell_set(self) -> FrozenSet[Cell]:
        return frozenset(self.cells)

    def to_text(self) -> str:
        occupied = self.cell_set()
        lines = [
            "".join("#" if (r, c) in occupied else "." for c in range(self.cols))
            for r in range(self.rows)
        ]
        return "\n".join(lines) + "\n"


def canonicalize(cells: Iterable[Cell]) -> Polyomino:
    cells = list(cells)
    if not cells:
        raise EmptyShapeError("cannot canonicalize an empty cell set")
    best = None
    for _ in range(4):
        form = _normalize(cells)
        if best is None or form < best:
            best = form
        cells = _turn(cells)
    return Polyomino(best)


def rotate90(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    return _normalize(_turn(cells))


def mirror_canonical(cells: Iterable[Cell]) -> Polyomino:
    """Canonical form up to rotation and reflection; a shape and its mirror image agree."""
    cells = list(cells)
    return min(canonicalize(cells), canonicalize([(r, -c) for r, c in cells]))


def is_chiral(p: Polyomino) -> bool:
    return canonicalize([(r, -c) for r, c in p.cells]) != p


def contains_l_triomino(cells: Iterable[Cell]) -> bool:
    """True when some 2x2 window holds at least three of the cells."""
    occupied = set(cells)
    windows = {(r - dr, c - dc) for r, c in occupied for dr in (0, 1) for dc in (0, 1)}
    return any(
        sum((r + dr, c + dc) in occupied for dr in (0, 1) for dc in (0, 1)) >= 3 for r, c in windows
    )


def is_corner_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(cells)
    for r, c in cells:
        for dr, dc in KING_STEPS:
            if (r + dr, c + dc) in cells:
                graph.add_edge((r, c), (r + dr, c + dc))
    return nx.is_connected(graph)


L_TRIOMINO = canonicalize([(0, 0), (1, 0), (1, 1)])


def _grow(shapes: Iterable[Polyomino]) -> List[Polyomino]:
    grown = set()
    for shape in shapes:
        occupied = shape.cell_set()
        for r, c in shape.cells:
            for dr, dc in KING_STEPS:
                extra = (r + dr, c + dc)
                if extra not in occupied:
                    grown.add(canonicalize(occupied | {extra}))
    return sorted(grown)


def triomino_seeds() -> List[Polyomino]:
    """Every corner-connected three-cell shape."""
    return _grow(_grow([Polyomino(((0, 0),))]))


def grow_enumerate(n: int, mode: str = "l_triomino") -> List[Polyomino]:
    """Grow n-cell shapes one neighbour at a time.

    `l_triomino` seeds with the L-triomino alone; `exhaustive` seeds with every
    corner-connected triomino, so it yields every n-cell corner-connected shape.
    """
    if n < 3 or n > MAX_GROWTH_CELLS:
        raise SearchRangeError(f"cell count must be in 3..{MAX_GROWTH_CELLS}, got {n}")
    if mode not in GROWTH_MODES:
        raise SearchRangeError(f"unknown growth mode {mode!r}")
    shapes = [L_TRIOMINO] if mode == "l_triomino" else triomino_seeds()
    for size in range(3, n):
        shapes = _grow(shapes)
        logger.debug(f"Grew {len(shapes)} shapes with {size + 1} cells ({mode} mode)")
    return shapes


class MaskCell(str, Enum):
    NONEMPTY = "#"
    EMPTY = "."
    ANY = "?"


@dataclass(frozen=True)
class OccupancyMask:
    """Tri-state window; `subject` marks the cell a pattern rule talks about."""

    grid: Tuple[Tuple[MaskCell, ...], ...]
    name: str = ""
    subject: Optional[Cell] = None

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def cells_of(self, kind: MaskCell) -> List[Cell]:
        return [(r, c) for r, row in enumerate(self.grid) for c, cell in enumerate(row) if cell == kind]

    def rotated(self, quarter_turns: int = 1) -> "OccupancyMask":
        mask = self
        for _ in range(quarter_turns % 4):
            rows = mask.rows
            grid = tuple(
                tuple(mask.grid[rows - 1 - c][r] for c in range(rows)) for r in range(mask.cols)
            )
            subject = None
            if mask.subject is not None:
                sr, sc = mask.subject
                subject = (sc, rows - 1 - sr)
            mask = OccupancyMask(grid, mask.name, subject)
        return mask

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for r, row in enumerate(self.grid):
            lines.append("".join("@" if (r, c) == self.subject else cell.value for c, cell in enumerate(row)))
        return "\n".join(lines) + "\n"


def parse_mask(text: str, name: str = "") -> OccupancyMask:
    """Read the `.mask` format; `@` is a nonempty cell marked as the subject."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MaskParseError("missing header", line=1)
    try:
        rows, cols = (int(part) for part in lines[0].split(" "))
    except ValueError:
        raise MaskParseError("header must be '<rows> <cols>'", line=1)
    if rows < 1 or cols < 1:
        raise MaskParseError("rows and cols must be positive", line=1)
    if len(lines) - 1 != rows:
        raise MaskParseError(f"expected {rows} rows, found {len(lines) - 1}", line=len(lines))
    grid = []
    subject = None
    for lineno, line in enumerate(lines[1:], start=2):
        if len(line) != cols:
            raise MaskParseError(f"expected {cols} cells, found {len(line)}", line=lineno)
        row = []
        for c, char in enumerate(line):
            if char == "@":
                if subject is not None:
                    raise MaskParseError("more than one '@' subject cell", line=lineno)
                subject = (lineno - 2, c)
                char = "#"
            try:
                row.append(MaskCell(char))
            except ValueError:
                raise MaskParseError(f"unknown mask cell {char!r}", line=lineno)
        grid.append(tuple(row))
    if all(cell == MaskCell.ANY for row in grid for cell in row):
        raise MaskParseError("mask needs at least one '#' or '.' cell", line=2)
    return OccupancyMask(tuple(grid), name, subject)


def parse_poly(text: str) -> Polyomino:
    cells = []
    lines = [line for line in text.split("\n") if line != ""]
    for r, line in enumerate(lines):
        for c, char in enumerate(line):
            if char == "#":
                cells.append((r, c))
            elif char != ".":
                raise MosaicParseError(f"unknown shape cell {char!r}", line=r + 1)
    if not cells:
        raise EmptyShapeError("shape file has no '#' cells")
    return canonicalize(cells)


def mask_placements(cells: Iterable[Cell], mask: OccupancyMask) -> Iterator[Tuple[int, Cell]]:
    """(quarter turns, offset) for every placement of a rotated mask that fits."""
    occupied = frozenset(cells)
    for turns in range(4):
        rotated = mask.rotated(turns)
        filled = rotated.cells_of(MaskCell.NONEMPTY)
        empty = rotated.cells_of(MaskCell.EMPTY)
        if not filled:
            # A window of empty cells always fits somewhere off the shape.
            yield turns, (min((r for r, _ in occupied), default=0) - rotated.rows - 1, 0)
            continue
        anchor_r, anchor_c = filled[0]
        offsets = sorted({(r - anchor_r, c - anchor_c) for r, c in occupied})
        for dr, dc in offsets:
            if all((r + dr, c + dc) in occupied for r, c in filled) and not any(
                (r + dr, c + dc) in occupied for r, c in empty
            ):
                yield turns, (dr, dc)


def mask_matches(cells: Iterable[Cell], mask: OccupancyMask) -> bool:
    return next(mask_placements(cells, mask), None) is not None


def compliant(p: Polyomino, masks: Sequence[OccupancyMask]) -> bool:
    cells = p.cell_set()
    return not any(mask_matches(cells, mask) for mask in masks)
