"""
Tracing mosaics into planar diagrams and telling small links apart.

A crossing is stored as four arc labels read counterclockwise, starting at an
end of its under strand (so positions 0/2 are the under strand and 1/3 the
over strand). This is the usual PD-code layout, so standard PD codes can be
fed in directly with PlanarDiagram.from_pd.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from mosaics.config import get_settings
from mosaics.errors import CrossingBudgetError, InvalidMosaicError
from mosaics.laurent import DELTA, LaurentPoly
from mosaics.tiles import (
    CCW_PORTS,
    Cell,
    Layer,
    Mosaic,
    Port,
    Tile,
    point_of,
    tile_geometry,
    validate,
)

logger = logging.getLogger("linkid")

Slot = Tuple[int, int]  # (crossing index, position 0..3)


@dataclass(frozen=True)
class Crossing:
    labels: Tuple[int, int, int, int]
    cell: Optional[Cell] = None
    layer: str = "under-first"


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: Tuple[Crossing, ...] = ()
    free_loops: int = 0

    @classmethod
    def from_pd(cls, codes: Iterable[Sequence[int]], free_loops: int = 0) -> "PlanarDiagram":
        return cls(tuple(Crossing(tuple(code)) for code in codes), free_loops)

    def arc_slots(self) -> Dict[int, List[Slot]]:
        slots: Dict[int, List[Slot]] = {}
        for x, crossing in enumerate(self.crossings):
            for pos, label in enumerate(crossing.labels):
                slots.setdefault(label, []).append((x, pos))
        return slots

    def strand_components(self) -> List[FrozenSet[int]]:
        """Arc-label sets of the components that pass through a crossing."""
        graph = nx.Graph()
        for crossing in self.crossings:
            a, b, c, d = crossing.labels
            graph.add_edge(a, c)
            graph.add_edge(b, d)
        comps = [frozenset(comp) for comp in nx.connected_components(graph)]
        return sorted(comps, key=min)

    def component_count(self) -> int:
        return len(self.strand_components()) + self.free_loops

    def to_text(self) -> str:
        lines = [f"free_loops {self.free_loops}"]
        for crossing in self.crossings:
            where = "" if crossing.cell is None else f" @{crossing.cell[0]},{crossing.cell[1]}"
            lines.append(f"X {' '.join(str(l) for l in crossing.labels)} {crossing.layer}{where}")
        return "\n".join(lines) + "\n"


def _crossing_ports(tile: Tile, system) -> Tuple[Port, ...]:
    ccw = CCW_PORTS[system]
    under = next(s for s in tile_geometry(tile, system) if s.layer == Layer.UNDER)
    start = min(ccw.index(p) for p in under.endpoints)
    return tuple(ccw[(start + k) % 4] for k in range(4))


def trace(m: Mosaic) -> PlanarDiagram:
    report = validate(m)
    if not report.valid:
        raise InvalidMosaicError(report)
    system = m.system

    ends: Dict[tuple, List[Tuple[Cell, Port]]] = {}
    for cell in m.nonempty_cells():
        for strand in tile_geometry(m.tile(cell), system):
            for port in strand.endpoints:
                ends.setdefault(point_of(system, cell, port), []).append((cell, port))

    def partner(cell: Cell, port: Port) -> Tuple[Cell, Port]:
        a, b = ends[point_of(system, cell, port)]
        return b if a == (cell, port) else a

    def strand_index(cell: Cell, port: Port) -> int:
        for j, strand in enumerate(tile_geometry(m.tile(cell), system)):
            if port in strand.endpoints:
                return j
        raise KeyError((cell, port))

    crossing_cells = [cell for cell in m.nonempty_cells() if m.tile(cell).is_crossing]
    index = {cell: i for i, cell in enumerate(crossing_cells)}
    ports = {cell: _crossing_ports(m.tile(cell), system) for cell in crossing_cells}
    visited: Set[Tuple[Cell, int]] = set()

    def walk(cell: Cell, port: Port) -> Slot:
        while True:
            cell, port = partner(cell, port)
            if m.tile(cell).is_crossing:
                return index[cell], ports[cell].index(port)
            j = strand_index(cell, port)
            visited.add((cell, j))
            port = tile_geometry(m.tile(cell), system)[j].other(port)

    labels: Dict[Slot, int] = {}
    next_label = 1
    for cell in crossing_cells:
        x = index[cell]
        for pos, port in enumerate(ports[cell]):
            if (x, pos) in labels:
                continue
            labels[(x, pos)] = next_label
            labels[walk(cell, port)] = next_label
            next_label += 1

    free_loops = 0
    for cell in m.nonempty_cells():
        if m.tile(cell).is_crossing:
            continue
        for j, strand in enumerate(tile_geometry(m.tile(cell), system)):
            if (cell, j) in visited:
                continue
            free_loops += 1
            cur_cell, cur_j = cell, j
            port = min(strand.endpoints)
            while (cur_cell, cur_j) not in visited:
                visited.add((cur_cell, cur_j))
                out = tile_geometry(m.tile(cur_cell), system)[cur_j].other(port)
                cur_cell, port = partner(cur_cell, out)
                cur_j = strand_index(cur_cell, port)

    crossings = tuple(
        Crossing(tuple(labels[(index[cell], pos)] for pos in range(4)), cell) for cell in crossing_cells
    )
    return PlanarDiagram(crossings, free_loops)


def _check_budget(d: PlanarDiagram, limit: Optional[int], default: int) -> None:
    limit = default if limit is None else limit
    if len(d.crossings) > limit:
        raise CrossingBudgetError(f"{len(d.crossings)} crossings exceed the budget of {limit}")


def bracket(d: PlanarDiagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    """Kauffman bracket by the full state sum; the one-loop diagram has value 1."""
    _check_budget(d, max_crossings, get_settings().bracket_max_crossings)
    if not d.crossings:
        return DELTA ** (d.free_loops - 1) if d.free_loops else LaurentPoly.one()

    label_ids = {label: i for i, label in enumerate(sorted(d.arc_slots()))}
    codes = [tuple(label_ids[l] for l in c.labels) for c in d.crossings]
    n = len(label_ids)
    tally: Dict[Tuple[int, int], int] = {}
    for state in range(1 << len(codes)):
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        a_count = 0
        for k, (a, b, c, e) in enumerate(codes):
            if state >> k & 1:
                pairs = ((a, e), (b, c))
            else:
                a_count += 1
                pairs = ((a, b), (c, e))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        loops = sum(1 for i in range(n) if find(i) == i) + d.free_loops
        key = (2 * a_count - len(codes), loops)
        tally[key] = tally.get(key, 0) + 1

    total = LaurentPoly()
    delta_powers: Dict[int, LaurentPoly] = {}
    for (exp, loops), count in tally.items():
        if loops - 1 not in delta_powers:
            delta_powers[loops - 1] = DELTA ** (loops - 1)
        total = total + delta_powers[loops - 1].shift(exp) * count
    return total


def _orient(d: PlanarDiagram, comps: List[FrozenSet[int]]) -> Dict[int, Slot]:
    """Head slot of every arc for one fixed orientation of each component."""
    slots = d.arc_slots()
    heads: Dict[int, Slot] = {}
    for comp in comps:
        start = min(comp)
        label, head = start, slots[start][1]
        while True:
            heads[label] = head
            x, pos = head
            out = (x, (pos + 2) % 4)
            label = d.crossings[x].labels[out[1]]
            first, second = slots[label]
            head = second if first == out else first
            if label == start:
                break
    return heads


def writhe(d: PlanarDiagram, heads: Dict[int, Slot], flipped: FrozenSet[int] = frozenset()) -> int:
    slots = d.arc_slots()

    def head_of(label: int) -> Slot:
        head = heads[label]
        if label in flipped:
            first, second = slots[label]
            head = second if first == head else first
        return head

    total = 0
    for x, crossing in enumerate(d.crossings):
        under_forward = head_of(crossing.labels[0]) == (x, 0)
        over_forward = head_of(crossing.labels[1]) == (x, 1)
        total += -1 if under_forward == over_forward else 1
    return total


def _sort_key(polys: Iterable[LaurentPoly]) -> Tuple:
    return tuple(sorted(p.sorted_terms() for p in polys))


@dataclass(frozen=True, eq=False)
class LinkFingerprint:
    components: int
    polys: FrozenSet[LaurentPoly] = field(default_factory=frozenset)

    def mirror(self) -> "LinkFingerprint":
        return LinkFingerprint(self.components, frozenset(p.mirror() for p in self.polys))

    @property
    def key(self) -> Tuple:
        return (self.components, min(_sort_key(self.polys), _sort_key(p.mirror() for p in self.polys)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkFingerprint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        shown = ", ".join(str(p) for p in sorted(self.polys, key=lambda p: p.sorted_terms()))
        return f"{self.components} component(s): {{{shown}}}"


def fingerprint(d: PlanarDiagram, max_crossings: Optional[int] = None) -> LinkFingerprint:
    poly = bracket(d, max_crossings)
    comps = d.strand_components()
    heads = _orient(d, comps)
    polys = set()
    for flips in itertools.product((False, True), repeat=max(len(comps) - 1, 0)):
        flipped = frozenset(label for comp, flip in zip(comps[1:], flips) if flip for label in comp)
        w = writhe(d, heads, flipped)
        normalized = poly.shift(-3 * w) * (-1 if w % 2 else 1)
        polys.add(normalized)
    return LinkFingerprint(len(comps) + d.free_loops, frozenset(polys))


@dataclass(frozen=True)
class LinkClass:
    tag: str
    fingerprint: Optional[LinkFingerprint] = None

    EMPTY = "Empty"
    UNKNOT = "Unknot"
    HOPF = "HopfLink"
    TREFOIL = "Trefoil"
    SOLOMON = "SolomonsKnot"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.tag


def _fp(components: int, *polys: Dict[int, int]) -> LinkFingerprint:
    return LinkFingerprint(components, frozenset(LaurentPoly(p) for p in polys))


# Normalized brackets over every relative orientation, one representative per
# mirror pair.
REFERENCE_TABLE: Tuple[Tuple[str, LinkFingerprint], ...] = (
    (LinkClass.EMPTY, _fp(0, {0: 1})),
    (LinkClass.UNKNOT, _fp(1, {0: 1})),
    (LinkClass.HOPF, _fp(2, {-2: -1, -10: -1}, {2: -1, 10: -1})),
    (LinkClass.TREFOIL, _fp(1, {-4: 1, -12: 1, -16: -1})),
    (LinkClass.SOLOMON, _fp(2, {-6: -1, -14: -1, -18: 1, -22: -1}, {6: 1, 2: -1, 10: -1, 18: -1})),
)


@lru_cache(maxsize=None)
def _reference_lookup() -> Dict[LinkFingerprint, str]:
    return {fp: tag for tag, fp in REFERENCE_TABLE}


def classify(f: LinkFingerprint) -> LinkClass:
    tag = _reference_lookup().get(f)
    if tag is None:
        return LinkClass(LinkClass.OTHER, f)
    return LinkClass(tag, f)


def split_components(d: PlanarDiagram) -> List[FrozenSet[int]]:
    """Blocks of components that cannot be pulled apart diagrammatically.

    Components are numbered as in strand_components(), followed by the free
    loops.
    """
    comps = d.strand_components()
    owner = {label: i for i, comp in enumerate(comps) for label in comp}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(comps) + d.free_loops))
    for crossing in d.crossings:
        a, b, _, _ = crossing.labels
        if owner[a] != owner[b]:
            graph.add_edge(owner[a], owner[b])
    return sorted((frozenset(block) for block in nx.connected_components(graph)), key=min)


def sub_diagram(d: PlanarDiagram, labels: FrozenSet[int]) -> PlanarDiagram:
    """The components carrying `labels`, with every other component lifted off.

    Crossings with a dropped component disappear and the two arcs of the kept
    strand on either side are merged; a kept component left without crossings
    becomes a free loop.
    """
    comps = [comp for comp in d.strand_components() if comp <= labels]
    keep = frozenset().union(*comps)
    parent = {label: label for label in keep}

    def find(label: int) -> int:
        while parent[label] != label:
            parent[label] = parent[parent[label]]
            label = parent[label]
        return label

    kept = []
    for crossing in d.crossings:
        a, b, c, e = crossing.labels
        if a in keep and b in keep:
            kept.append(crossing)
        elif a in keep:
            parent[find(a)] = find(c)
        elif b in keep:
            parent[find(b)] = find(e)
    crossings = tuple(Crossing(tuple(find(l) for l in x.labels), x.cell, x.layer) for x in kept)
    used = {label for x in crossings for label in x.labels}
    free = sum(1 for comp in comps if not any(find(label) in used for label in comp))
    return PlanarDiagram(crossings, free)


def _unknot_fingerprint() -> LinkFingerprint:
    return dict(REFERENCE_TABLE)[LinkClass.UNKNOT]


def is_unknot_free(d: PlanarDiagram, max_crossings: Optional[int] = None) -> bool:
    """False when some component is an unknot that can be pulled off the rest.

    A component counts as pulled off when it shares no crossing with the rest,
    or when the link's fingerprint is exactly the loop factor times the
    fingerprint of the other components.
    """
    _check_budget(d, max_crossings, get_settings().unknot_max_crossings)
    if d.free_loops:
        return False
    comps = d.strand_components()
    budget = len(d.crossings)
    unknot = _unknot_fingerprint()
    singletons = {min(block) for block in split_components(d) if len(block) == 1}
    everything = frozenset().union(*comps)
    whole: Optional[LinkFingerprint] = None
    for index, comp in enumerate(comps):
        if fingerprint(sub_diagram(d, comp), budget) != unknot:
            continue
        rest_labels = everything - comp
        if index in singletons or not rest_labels:
            return False
        if whole is None:
            whole = fingerprint(d, budget)
        rest = fingerprint(sub_diagram(d, rest_labels), budget)
        if whole.polys == frozenset(p * DELTA for p in rest.polys):
            logger.debug(f"Component {index} is an unknot split from the rest")
            return False
    return True


def identify(m: Mosaic) -> Tuple[PlanarDiagram, LinkFingerprint, LinkClass]:
    d = trace(m)
    f = fingerprint(d)
    return d, f, classify(f)
