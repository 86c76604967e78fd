"""
Exhaustive corner-tile fills of candidate shapes, and the small-link census
built on top of them.
"""
import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from mosaics.config import get_settings
from mosaics.errors import SearchRangeError
from mosaics.fixtures import load_masks, load_patterns
from mosaics.linkid import LinkClass, LinkFingerprint, classify, fingerprint, is_unknot_free, trace
from mosaics.polyomino import (
    OccupancyMask,
    Polyomino,
    compliant,
    contains_l_triomino,
    grow_enumerate,
    mask_matches,
    mask_placements,
    mirror_canonical,
)
from mosaics.tiles import (
    ARC_TILES,
    NONEMPTY_TILES,
    SIDE_STEP,
    Cell,
    Mosaic,
    MosaicSystem,
    Tile,
    hugged_side,
    point_of,
    rotate_tile,
    used_ports,
    validate,
)

logger = logging.getLogger("fillsearch")

MIN_SEARCH_CELLS = 3
MAX_SEARCH_CELLS = 8

FORCED_DIAGONAL = "forced_diagonal"
FORBIDDEN_FORK = "forbidden_fork"

# Unknot-free links and the fewest corner tiles each needs.
EXPECTED_CLASSIFICATION = {LinkClass.HOPF: 6, LinkClass.TREFOIL: 8, LinkClass.SOLOMON: 8}

Vertex = Tuple[str, int, int]


@dataclass(frozen=True)
class FillRules:
    require_valid: bool = True
    arc_side_empty: bool = True
    forced_diagonal: bool = True
    avoid_fork: bool = True

    @classmethod
    def preset(cls, name: str) -> "FillRules":
        if name == "strict":
            return cls()
        if name == "mandatory":
            return cls(avoid_fork=False)
        raise SearchRangeError(f"unknown rules preset {name!r}; use 'strict' or 'mandatory'")


def shape_filters(rules: FillRules, masks: Sequence[OccupancyMask], patterns: Dict[str, OccupancyMask]) -> List[OccupancyMask]:
    """Masks a shape must avoid under the given rules."""
    filters = list(masks)
    if rules.avoid_fork and FORBIDDEN_FORK in patterns:
        filters.append(patterns[FORBIDDEN_FORK])
    return filters


@dataclass(frozen=True)
class FillProblem:
    """A shape with per-cell tile domains and the vertex bookkeeping for pruning.

    Cells are visited row-major; closing[i] lists the vertices whose last
    incident shape cell is order[i], so they are fully decided after step i.
    """

    shape: Polyomino
    rules: FillRules
    order: Tuple[Cell, ...]
    domains: Tuple[Tuple[Tile, ...], ...]
    closing: Tuple[Tuple[Vertex, ...], ...]
    blocked: bool = False

    @classmethod
    def build(cls, shape: Polyomino, rules: FillRules, patterns: Optional[Dict[str, OccupancyMask]] = None) -> "FillProblem":
        patterns = {} if patterns is None else patterns
        occupied = shape.cell_set()
        order = tuple(sorted(occupied))
        domains: Dict[Cell, List[Tile]] = {cell: list(NONEMPTY_TILES) for cell in order}

        if rules.arc_side_empty:
            for (r, c), domain in domains.items():
                allowed = []
                for tile in domain:
                    if tile in ARC_TILES:
                        dr, dc = SIDE_STEP[hugged_side(tile)]
                        if (r + dr, c + dc) in occupied:
                            continue
                    allowed.append(tile)
                domains[(r, c)] = allowed

        pattern = patterns.get(FORCED_DIAGONAL)
        if rules.forced_diagonal and pattern is not None and pattern.subject is not None:
            for turns, (dr, dc) in mask_placements(occupied, pattern):
                sr, sc = pattern.rotated(turns).subject
                forced = rotate_tile(Tile.T5, MosaicSystem.CORNER, turns)
                cell = (sr + dr, sc + dc)
                domains[cell] = [tile for tile in domains[cell] if tile == forced]

        fork = patterns.get(FORBIDDEN_FORK)
        blocked = bool(rules.avoid_fork and fork is not None and mask_matches(occupied, fork))

        last: Dict[Vertex, int] = {}
        for i, (r, c) in enumerate(order):
            for dr in (0, 1):
                for dc in (0, 1):
                    last[("v", r + dr, c + dc)] = i
        closing = tuple(
            tuple(sorted(v for v, i in last.items() if i == step)) for step in range(len(order))
        )
        return cls(shape, rules, order, tuple(tuple(domains[cell]) for cell in order), closing, blocked)

    def points(self, index: int, tile: Tile) -> List[Vertex]:
        cell = self.order[index]
        return [point_of(MosaicSystem.CORNER, cell, port) for port in used_ports(tile, MosaicSystem.CORNER)]

    def mosaic(self, tiles: Sequence[Tile]) -> Mosaic:
        return Mosaic.from_cells(MosaicSystem.CORNER, dict(zip(self.order, tiles)), crop=False)

    def allows(self, tiles: Sequence[Tile]) -> bool:
        """Post-hoc rule check of a complete assignment, without validity."""
        if self.blocked or len(tiles) != len(self.order):
            return False
        return all(tile in domain for tile, domain in zip(tiles, self.domains))


def prune_feasible(problem: FillProblem, prefix: Sequence[Tile]) -> bool:
    """False only when no completion of prefix can be a valid fill."""
    if problem.blocked or len(prefix) > len(problem.order):
        return False
    counts: Counter = Counter()
    for i, tile in enumerate(prefix):
        if tile not in problem.domains[i]:
            return False
        counts.update(problem.points(i, tile))
    if any(count > 2 for count in counts.values()):
        return False
    for i in range(len(prefix)):
        if any(counts[v] not in (0, 2) for v in problem.closing[i]):
            return False
    return True


def _pruned_assignments(problem: FillProblem) -> Iterator[Tuple[Tile, ...]]:
    size = len(problem.order)
    counts: Counter = Counter()
    chosen: List[Tile] = []
    points = [{tile: problem.points(i, tile) for tile in problem.domains[i]} for i in range(size)]

    def extend(i: int) -> Iterator[Tuple[Tile, ...]]:
        if i == size:
            yield tuple(chosen)
            return
        for tile in problem.domains[i]:
            pts = points[i][tile]
            counts.update(pts)
            if all(counts[p] <= 2 for p in pts) and all(counts[v] in (0, 2) for v in problem.closing[i]):
                chosen.append(tile)
                yield from extend(i + 1)
                chosen.pop()
            counts.subtract(pts)

    yield from extend(0)


def enumerate_fills(
    p: Polyomino,
    rules: Optional[FillRules] = None,
    patterns: Optional[Dict[str, OccupancyMask]] = None,
    prune: bool = True,
) -> Iterator[Mosaic]:
    """Valid corner mosaics occupying exactly p, in lexicographic tile order."""
    if patterns is None:
        patterns = load_patterns()
    problem = FillProblem.build(p, rules or FillRules(), patterns)
    if problem.blocked:
        logger.debug(f"Shape {p.cells} holds a forbidden fork; no fills")
        return
    if prune:
        for tiles in _pruned_assignments(problem):
            yield problem.mosaic(tiles)
        return
    for tiles in itertools.product(*problem.domains):
        mosaic = problem.mosaic(tiles)
        if validate(mosaic).valid:
            yield mosaic


@dataclass(frozen=True)
class ShapeReport:
    shape: Polyomino
    fill_count: int
    fingerprints: Tuple[Tuple[LinkFingerprint, int], ...]
    unknot_free: Tuple[str, ...]
    # Unknot-free links this shape realises with their fewest tiles.
    minimal_links: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "cells": self.shape.size,
            "shape": self.shape.to_text(),
            "fills": self.fill_count,
            "fingerprints": {str(fp): count for fp, count in self.fingerprints},
            "unknot_free_links": list(self.unknot_free),
            "minimal_links": list(self.minimal_links),
        }


@dataclass
class SearchReport:
    max_cells: int
    rules: str
    mode: str
    compliant_counts: Dict[int, int] = field(default_factory=dict)
    shapes: List[ShapeReport] = field(default_factory=list)
    classification: Dict[str, int] = field(default_factory=dict)

    @property
    def compliant_up_to_mirror(self) -> int:
        return len({mirror_canonical(report.shape.cells) for report in self.shapes})

    def matches_expected(self) -> bool:
        return self.classification == expected_classification(self.max_cells)

    def to_dict(self) -> dict:
        return {
            "max_cells": self.max_cells,
            "rules": self.rules,
            "mode": self.mode,
            "compliant_counts": {str(n): count for n, count in sorted(self.compliant_counts.items())},
            "compliant_total": sum(self.compliant_counts.values()),
            "compliant_up_to_mirror": self.compliant_up_to_mirror,
            "shapes": [shape.to_dict() for shape in self.shapes],
            "classification": dict(sorted(self.classification.items(), key=lambda item: (item[1], item[0]))),
            "matches_expected": self.matches_expected(),
        }

    def to_text(self) -> str:
        lines = [f"search up to {self.max_cells} cells, rules={self.rules}, mode={self.mode}"]
        for n, count in sorted(self.compliant_counts.items()):
            lines.append(f"  {n} cells: {count} compliant shapes")
        lines.append(f"  compliant total: {sum(self.compliant_counts.values())}")
        lines.append(f"  compliant up to mirror image: {self.compliant_up_to_mirror}")
        for shape in self.shapes:
            links = ", ".join(shape.unknot_free) or "none"
            lines.append(f"shape ({shape.shape.size} cells, {shape.fill_count} fills): unknot-free {links}")
            if shape.minimal_links:
                lines.append(f"  fewest tiles for {', '.join(shape.minimal_links)}")
            lines.extend("    " + row for row in shape.shape.to_text().splitlines())
        lines.append("classification:")
        if not self.classification:
            lines.append("  (no unknot-free links)")
        for tag, n in sorted(self.classification.items(), key=lambda item: (item[1], item[0])):
            lines.append(f"  {tag}@{n}")
        return "\n".join(lines) + "\n"


def expected_classification(max_cells: int) -> Dict[str, int]:
    return {tag: n for tag, n in EXPECTED_CLASSIFICATION.items() if n <= max_cells}


def fill_shape(shape: Polyomino, rules: FillRules, patterns: Dict[str, OccupancyMask]) -> ShapeReport:
    fingerprints: Counter = Counter()
    unknot_free = set()
    fills = 0
    for mosaic in enumerate_fills(shape, rules, patterns):
        fills += 1
        diagram = trace(mosaic)
        fp = fingerprint(diagram)
        fingerprints[fp] += 1
        if is_unknot_free(diagram):
            unknot_free.add(classify(fp).tag)
    ordered = tuple(sorted(fingerprints.items(), key=lambda item: item[0].key))
    return ShapeReport(shape, fills, ordered, tuple(sorted(unknot_free)))


def _fill_job(job: Tuple[Polyomino, FillRules, Dict[str, OccupancyMask]]) -> ShapeReport:
    return fill_shape(*job)


def reproduce_classification(
    max_cells: int,
    rules: str = "strict",
    masks: Optional[Sequence[OccupancyMask]] = None,
    patterns: Optional[Dict[str, OccupancyMask]] = None,
    mode: str = "l_triomino",
    workers: Optional[int] = None,
) -> SearchReport:
    if not MIN_SEARCH_CELLS <= max_cells <= MAX_SEARCH_CELLS:
        raise SearchRangeError(
            f"max_cells must be in {MIN_SEARCH_CELLS}..{MAX_SEARCH_CELLS}, got {max_cells}"
        )
    fill_rules = FillRules.preset(rules)
    masks = load_masks() if masks is None else masks
    patterns = load_patterns() if patterns is None else patterns
    workers = workers or get_settings().search_workers
    filters = shape_filters(fill_rules, masks, patterns)

    report = SearchReport(max_cells, rules, mode)
    jobs = []
    for n in range(MIN_SEARCH_CELLS, max_cells + 1):
        shapes = [shape for shape in grow_enumerate(n, mode) if compliant(shape, filters)]
        report.compliant_counts[n] = len(shapes)
        logger.info(f"{n} cells: {len(shapes)} compliant shapes")
        for shape in shapes:
            if not contains_l_triomino(shape.cells):
                logger.info(f"Compliant shape without an L-triomino:\n{shape.to_text()}")
        jobs.extend((shape, fill_rules, patterns) for shape in shapes)

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_fill_job, jobs))
    else:
        results = [_fill_job(job) for job in jobs]

    for result in results:
        for tag in result.unknot_free:
            n = result.shape.size
            report.classification[tag] = min(report.classification.get(tag, n), n)
    report.shapes = [
        replace(
            result,
            minimal_links=tuple(t for t in result.unknot_free if report.classification[t] == result.shape.size),
        )
        for result in results
    ]
    logger.info(f"Classification up to {max_cells} cells: {report.classification}")
    return report
