import random

import pytest

from mosaics.errors import MosaicParseError
from mosaics.tiles import (
    EDGE_TO_CORNER,
    NONEMPTY_TILES,
    Layer,
    Mosaic,
    MosaicSystem,
    Port,
    Strand,
    Tile,
    hugged_side,
    mirror_mosaic,
    nonempty_count,
    parse_mosaic,
    rotate_mosaic,
    rotate_tile,
    serialize_mosaic,
    tile_for_strands,
    tile_geometry,
    used_ports,
    validate,
)

EDGE = MosaicSystem.EDGE
CORNER = MosaicSystem.CORNER


def oracle_valid(m: Mosaic) -> bool:
    """Matching rule checked side by side instead of through connection-point counts."""
    def has(cell, port):
        return port in used_ports(m.tile(cell), m.system)

    if m.system == EDGE:
        for r in range(m.rows):
            for c in range(m.cols + 1):
                left, right = has((r, c - 1), Port.E), has((r, c), Port.W)
                if (c in (0, m.cols) and (left or right)) or left != right:
                    return False
        for r in range(m.rows + 1):
            for c in range(m.cols):
                top, bottom = has((r - 1, c), Port.S), has((r, c), Port.N)
                if (r in (0, m.rows) and (top or bottom)) or top != bottom:
                    return False
        return True
    for i in range(m.rows + 1):
        for j in range(m.cols + 1):
            ends = (
                has((i - 1, j - 1), Port.SE)
                + has((i - 1, j), Port.SW)
                + has((i, j - 1), Port.NE)
                + has((i, j), Port.NW)
            )
            if ends not in (0, 2):
                return False
    return True


@pytest.mark.parametrize("tile", list(Tile))
def test_corner_geometry_is_edge_geometry_turned(tile):
    expected = {Strand(frozenset(EDGE_TO_CORNER[p] for p in s.endpoints), s.layer) for s in tile_geometry(tile, EDGE)}
    assert set(tile_geometry(tile, CORNER)) == expected


@pytest.mark.parametrize("system", list(MosaicSystem))
@pytest.mark.parametrize("tile", list(Tile))
def test_each_port_used_by_at_most_one_strand(system, tile):
    strands = tile_geometry(tile, system)
    ports = [p for s in strands for p in s.endpoints]
    assert len(ports) == len(set(ports))
    assert len(ports) in (0, 2, 4)
    assert tile_for_strands(strands, system) == tile


def test_crossing_layers():
    over = {s.layer for s in tile_geometry(Tile.T9, EDGE) if s.endpoints == frozenset({Port.N, Port.S})}
    assert over == {Layer.OVER}
    over = {s.layer for s in tile_geometry(Tile.T10, EDGE) if s.endpoints == frozenset({Port.W, Port.E})}
    assert over == {Layer.OVER}
    assert Tile.T9.is_crossing and Tile.T10.is_crossing and not Tile.T7.is_crossing


def test_quarter_turns():
    assert rotate_tile(Tile.T1, EDGE) == Tile.T4
    assert rotate_tile(Tile.T2, EDGE) == Tile.T1
    assert rotate_tile(Tile.T5, EDGE) == Tile.T6
    assert rotate_tile(Tile.T7, EDGE) == Tile.T8
    assert rotate_tile(Tile.T9, EDGE) == Tile.T10
    for system in MosaicSystem:
        for tile in Tile:
            assert rotate_tile(tile, system, 4) == tile


def test_hugged_side():
    assert hugged_side(Tile.T1) == Port.W
    assert hugged_side(Tile.T2) == Port.S
    assert hugged_side(Tile.T3) == Port.E
    assert hugged_side(Tile.T4) == Port.N
    assert hugged_side(Tile.T5) is None


def test_parse_and_serialize():
    text = "corner 2 3\n6 9 5\n5 9 6\n"
    m = parse_mosaic(text)
    assert (m.system, m.rows, m.cols) == (CORNER, 2, 3)
    assert m.tile((0, 1)) == Tile.T9
    assert serialize_mosaic(m) == text
    assert nonempty_count(m) == 6


def test_parse_accepts_dot_for_empty():
    m = parse_mosaic("edge 1 2\n. 0\n")
    assert m.cells == ((Tile.T0, Tile.T0),)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("knot 1 1\n0\n", 1),
        ("corner x 1\n0\n", 1),
        ("corner 0 1\n", 1),
        ("corner 2 2\n0 0\n", 2),
        ("corner 2 2\n0 0\n0\n", 3),
        ("corner 1 2\n0 11\n", 2),
        ("corner 1 1\n-1\n", 2),
        ("corner 1 2\n1 \u00b2\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(MosaicParseError) as excinfo:
        parse_mosaic(text)
    assert excinfo.value.line == line


def test_fixtures_are_valid(fixture):
    for name in ("unknot_corner", "hopf_corner", "trefoil_corner", "solomon_corner", "empty_corner"):
        assert validate(fixture(name)).valid, name
    for name in ("unknot_edge_2x2", "hopf_edge", "ring_edge_3x3"):
        assert validate(fixture(name)).valid, name


def test_lone_arc_has_two_open_ends(fixture):
    report = validate(fixture("lone_arc_corner"))
    assert not report.valid
    assert len(report.violations) == 2
    assert all(v.reason == "vertex has 1 strand ends" for v in report.violations)


def test_four_ends_at_a_vertex():
    m = Mosaic.from_rows(CORNER, [[5, 6], [6, 5]])
    report = validate(m)
    assert any(v.reason == "four strand ends meet at one vertex" for v in report.violations)


def test_edge_strand_on_outer_boundary():
    report = validate(Mosaic.from_rows(EDGE, [[5]]))
    assert not report.valid
    assert all(v.reason == "connection point on the outer boundary" for v in report.violations)


@pytest.mark.parametrize("system", list(MosaicSystem))
def test_validator_agrees_with_oracle(system):
    rng = random.Random(f"validate-{system.value}")
    valid = 0
    for _ in range(1000):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        blank = [0] * rng.choice([3, 10, 30])
        grid = [[rng.choice(blank + list(NONEMPTY_TILES)) for _ in range(cols)] for _ in range(rows)]
        m = Mosaic.from_rows(system, grid)
        ok = validate(m).valid
        assert ok == oracle_valid(m), serialize_mosaic(m)
        valid += ok
    assert valid > 0


def test_generated_edge_mosaics_are_valid(random_edge_mosaic):
    rng = random.Random(7)
    for _ in range(200):
        m = random_edge_mosaic(rng, rng.randint(2, 5), rng.randint(2, 5), rng.randint(1, 5))
        assert validate(m).valid and oracle_valid(m)


def test_rotation_keeps_validity(fixture):
    for name in ("trefoil_corner", "hopf_edge"):
        m = fixture(name)
        turned = rotate_mosaic(m)
        assert (turned.rows, turned.cols) == (m.cols, m.rows)
        assert validate(turned).valid
        assert rotate_mosaic(m, 4) == m


def test_mirror_swaps_crossings_only(fixture):
    m = fixture("hopf_corner")
    mirrored = mirror_mosaic(m)
    assert mirrored.tile((0, 1)) == Tile.T10
    assert mirrored.tile((0, 0)) == m.tile((0, 0))
    assert mirror_mosaic(mirrored) == m
