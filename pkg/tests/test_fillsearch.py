import itertools
from collections import Counter

import pytest

from mosaics.errors import SearchRangeError
from mosaics.fillsearch import (
    FORBIDDEN_FORK,
    FillProblem,
    FillRules,
    enumerate_fills,
    expected_classification,
    fill_shape,
    prune_feasible,
    reproduce_classification,
    shape_filters,
)
from mosaics.fixtures import load_masks, load_patterns, load_shapes
from mosaics.linkid import LinkClass, classify, fingerprint, is_unknot_free, trace
from mosaics.polyomino import canonicalize
from mosaics.tiles import NONEMPTY_TILES, Tile, mirror_mosaic, occupancy, rotate_mosaic, serialize_mosaic, validate

T = Tile


@pytest.fixture(scope="module")
def patterns():
    return load_patterns()


@pytest.fixture(scope="module")
def rectangle():
    return load_shapes()["rectangle_2x3"]


@pytest.fixture(scope="module")
def ring():
    return load_shapes()["ring_3x3"]


@pytest.fixture(scope="module")
def rectangle_fills(rectangle, patterns):
    return list(enumerate_fills(rectangle, FillRules(), patterns))


@pytest.fixture(scope="module")
def ring_fills(ring, patterns):
    return list(enumerate_fills(ring, FillRules(), patterns))


def unknot_free_tags(fills):
    tags = set()
    for m in fills:
        d = trace(m)
        if is_unknot_free(d):
            tags.add(classify(fingerprint(d)).tag)
    return tags


def test_rule_presets():
    assert FillRules.preset("strict") == FillRules(True, True, True, True)
    assert FillRules.preset("mandatory") == FillRules(avoid_fork=False)
    with pytest.raises(SearchRangeError):
        FillRules.preset("lenient")


def test_fork_filter_follows_rules(patterns):
    masks = load_masks()
    assert len(shape_filters(FillRules.preset("strict"), masks, patterns)) == len(masks) + 1
    assert shape_filters(FillRules.preset("mandatory"), masks, patterns) == masks
    assert shape_filters(FillRules.preset("strict"), masks, {}) == masks
    assert patterns[FORBIDDEN_FORK].name == FORBIDDEN_FORK


def test_rectangle_fill_count(rectangle_fills, rectangle):
    assert len(rectangle_fills) == 17
    for m in rectangle_fills:
        assert validate(m).valid
        assert occupancy(m) == rectangle.cell_set()


def test_rectangle_corners_are_forced(rectangle_fills):
    for m in rectangle_fills:
        assert (m.tile((0, 0)), m.tile((0, 2)), m.tile((1, 0)), m.tile((1, 2))) == (T.T6, T.T5, T.T5, T.T6)


def test_rectangle_hopf_fills(rectangle_fills, fixture):
    hopf = [m for m in rectangle_fills if is_unknot_free(trace(m))]
    assert [serialize_mosaic(m) for m in hopf] == [
        "corner 2 3\n6 9 5\n5 9 6\n",
        "corner 2 3\n6 10 5\n5 10 6\n",
    ]
    assert fixture("hopf_corner") in rectangle_fills
    assert unknot_free_tags(rectangle_fills) == {LinkClass.HOPF}


def test_rectangle_link_census(rectangle_fills):
    tags = Counter(classify(fingerprint(trace(m))).tag for m in rectangle_fills)
    assert tags == {LinkClass.UNKNOT: 11, LinkClass.OTHER: 4, LinkClass.HOPF: 2}
    crossing_counts = Counter(sum(m.tile(cell).is_crossing for cell in occupancy(m)) for m in rectangle_fills)
    assert crossing_counts == {0: 5, 1: 8, 2: 4}
    for m in rectangle_fills:
        if is_unknot_free(trace(m)):
            crossings = {cell for cell in occupancy(m) if m.tile(cell).is_crossing}
            assert crossings == {(0, 1), (1, 1)}, serialize_mosaic(m)


def test_ring_fill_count(ring_fills):
    assert len(ring_fills) == 257
    assert all(validate(m).valid for m in ring_fills)


def test_ring_unknot_free_links(ring_fills, fixture):
    assert fixture("trefoil_corner") in ring_fills
    assert fixture("solomon_corner") in ring_fills
    assert unknot_free_tags(ring_fills) == {LinkClass.HOPF, LinkClass.TREFOIL, LinkClass.SOLOMON}


def test_knotted_ring_fills_alternate(ring_fills):
    touching = [((0, 1), (1, 0)), ((0, 1), (1, 2)), ((1, 0), (2, 1)), ((1, 2), (2, 1))]
    for m in ring_fills:
        d = trace(m)
        if not is_unknot_free(d) or classify(fingerprint(d)).tag == LinkClass.HOPF:
            continue
        for a, b in touching:
            if m.tile(a).is_crossing and m.tile(b).is_crossing:
                assert m.tile(a) != m.tile(b), serialize_mosaic(m)


def test_fills_closed_under_mirroring(rectangle_fills, ring_fills):
    for fills in (rectangle_fills, ring_fills):
        assert {mirror_mosaic(m) for m in fills} == set(fills)


def test_ring_fills_closed_under_rotation(ring_fills):
    fills = set(ring_fills)
    assert {rotate_mosaic(m) for m in ring_fills} == fills


def test_fills_come_in_lexicographic_order(ring_fills):
    keys = [tuple(m.tile(cell) for cell in sorted(occupancy(m))) for m in ring_fills]
    assert keys == sorted(keys)


def test_pruning_keeps_every_fill(rectangle, ring, patterns):
    for shape in (rectangle, ring):
        pruned = list(enumerate_fills(shape, FillRules(), patterns))
        naive = list(enumerate_fills(shape, FillRules(), patterns, prune=False))
        assert pruned == naive


@pytest.mark.slow
def test_rectangle_fills_match_full_tile_product(rectangle, patterns, rectangle_fills):
    problem = FillProblem.build(rectangle, FillRules(), patterns)
    found = []
    for tiles in itertools.product(NONEMPTY_TILES, repeat=len(problem.order)):
        if problem.allows(tiles):
            m = problem.mosaic(tiles)
            if validate(m).valid:
                found.append(m)
    assert found == rectangle_fills


def test_prune_feasible(rectangle, patterns):
    problem = FillProblem.build(rectangle, FillRules(), patterns)
    assert problem.order == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2))
    assert prune_feasible(problem, [])
    assert prune_feasible(problem, [T.T6, T.T4])
    assert prune_feasible(problem, [T.T6, T.T9, T.T5, T.T5, T.T9, T.T6])
    assert not prune_feasible(problem, [T.T6, T.T6])
    assert not prune_feasible(problem, [T.T1])


def test_single_cell_has_no_fills(patterns):
    assert list(enumerate_fills(canonicalize([(0, 0)]), FillRules(), patterns)) == []


def test_fork_shape_is_blocked(patterns):
    fork = canonicalize([(0, 1), (1, 0), (1, 2)])
    assert FillProblem.build(fork, FillRules(), patterns).blocked
    assert not FillProblem.build(fork, FillRules.preset("mandatory"), patterns).blocked
    assert list(enumerate_fills(fork, FillRules(), patterns)) == []


def test_fill_shape_report(rectangle, patterns):
    report = fill_shape(rectangle, FillRules(), patterns)
    assert report.fill_count == 17
    assert report.unknot_free == (LinkClass.HOPF,)
    assert sum(count for _, count in report.fingerprints) == 17
    assert report.to_dict()["cells"] == 6


def test_expected_table_is_cut_at_max_cells():
    assert expected_classification(5) == {}
    assert expected_classification(7) == {LinkClass.HOPF: 6}
    assert expected_classification(8) == {LinkClass.HOPF: 6, LinkClass.TREFOIL: 8, LinkClass.SOLOMON: 8}


@pytest.mark.parametrize("max_cells", [2, 9])
def test_search_range(max_cells):
    with pytest.raises(SearchRangeError):
        reproduce_classification(max_cells)


def test_unknown_rules_rejected():
    with pytest.raises(SearchRangeError):
        reproduce_classification(5, rules="lenient")


def test_search_below_six_cells_finds_nothing():
    report = reproduce_classification(5)
    assert report.compliant_counts == {3: 0, 4: 0, 5: 0}
    assert report.classification == {}
    assert report.matches_expected()
    assert "(no unknot-free links)" in report.to_text()


@pytest.mark.slow
def test_search_six_cells_finds_hopf_link():
    report = reproduce_classification(6)
    assert report.classification == {LinkClass.HOPF: 6}
    assert report.matches_expected()


@pytest.mark.slow
def test_search_eight_cells_reproduces_table():
    report = reproduce_classification(8)
    assert report.classification == {LinkClass.HOPF: 6, LinkClass.TREFOIL: 8, LinkClass.SOLOMON: 8}
    assert report.matches_expected()
    assert "HopfLink@6" in report.to_text()


@pytest.mark.slow
def test_parallel_search_agrees():
    serial = reproduce_classification(8, workers=1)
    parallel = reproduce_classification(8, workers=2)
    assert parallel.to_dict() == serial.to_dict()


@pytest.mark.slow
def test_mandatory_rules_reproduce_table():
    report = reproduce_classification(8, "mandatory")
    assert report.classification == {LinkClass.HOPF: 6, LinkClass.TREFOIL: 8, LinkClass.SOLOMON: 8}
    assert report.matches_expected()


@pytest.mark.slow
def test_links_are_credited_to_their_smallest_shapes():
    report = reproduce_classification(8)
    assert {n: report.compliant_counts[n] for n in (6, 7, 8)} == {6: 1, 7: 1, 8: 6}
    assert report.compliant_up_to_mirror == 7
    shapes = load_shapes()
    credited = {s.shape: s.minimal_links for s in report.shapes if s.minimal_links}
    assert credited == {
        shapes["rectangle_2x3"]: (LinkClass.HOPF,),
        shapes["ring_3x3"]: (LinkClass.SOLOMON, LinkClass.TREFOIL),
    }
    assert report.to_dict()["compliant_up_to_mirror"] == 7
    assert "compliant up to mirror image: 7" in report.to_text()
