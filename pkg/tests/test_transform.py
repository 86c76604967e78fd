import itertools

import pytest

from mosaics.errors import InvalidMosaicError, NotCheckerboardError, PushInError, WrongSystemError
from mosaics.linkid import fingerprint, identify, trace
from mosaics.tiles import Mosaic, MosaicSystem, Port, nonempty_count, serialize_mosaic, validate
from mosaics.transform import (
    cap_between,
    checkerboard_to_edge,
    convert,
    find_caps,
    is_checkerboard,
    push_in_caps,
    rotate_to_checkerboard,
    verify_bound,
)


def brute_force_caps(m: Mosaic):
    """Lexicographically first largest disjoint family of caps, by trying every subset."""
    candidates = sorted(
        cap.cells
        for cap in (cap_between(m, (r, c), b) for r, c in m.positions() for b in ((r, c + 1), (r + 1, c)))
        if cap is not None
    )
    for size in range(len(candidates), 0, -1):
        for combo in itertools.combinations(candidates, size):
            cells = [cell for pair in combo for cell in pair]
            if len(cells) == len(set(cells)):
                return list(combo)
    return []


def test_hopf_caps(fixture):
    caps = find_caps(fixture("hopf_edge"))
    assert [(cap.cells, cap.opening) for cap in caps] == [
        (((0, 1), (0, 2)), Port.S),
        (((1, 0), (2, 0)), Port.E),
        (((1, 3), (2, 3)), Port.W),
        (((3, 1), (3, 2)), Port.N),
    ]


def test_unknot_caps_prefer_lexicographic_order(fixture):
    caps = find_caps(fixture("unknot_edge_2x2"))
    assert [cap.cells for cap in caps] == [((0, 0), (0, 1)), ((1, 0), (1, 1))]


def test_ring_has_no_caps(fixture):
    assert find_caps(fixture("ring_edge_3x3")) == []


def test_caps_match_brute_force(fixture, edge_corpus):
    for m in edge_corpus:
        assert [cap.cells for cap in find_caps(m)] == brute_force_caps(m), serialize_mosaic(m)


def test_caps_need_edge_mosaic(fixture):
    with pytest.raises(WrongSystemError):
        find_caps(fixture("hopf_corner"))


def test_caps_need_valid_mosaic():
    with pytest.raises(InvalidMosaicError):
        find_caps(Mosaic.from_rows(MosaicSystem.EDGE, [[0, 2], [0, 0]]))


def test_rotation_gives_checkerboard(fixture):
    m = fixture("hopf_edge")
    rotated = rotate_to_checkerboard(m)
    assert rotated.system == MosaicSystem.CORNER
    assert is_checkerboard(rotated)
    assert nonempty_count(rotated) == nonempty_count(m)
    assert validate(rotated).valid


def test_checkerboard_round_trip(edge_corpus):
    for m in edge_corpus:
        back = checkerboard_to_edge(rotate_to_checkerboard(m))
        # Equal up to translation: both are cropped to their nonempty cells.
        assert back == Mosaic.from_cells(MosaicSystem.EDGE, m.assignment())


def test_checkerboard_to_edge_rejects_mixed_parity(fixture):
    with pytest.raises(NotCheckerboardError):
        checkerboard_to_edge(fixture("hopf_corner"))


def test_convert_unknot(fixture):
    converted, trace_ = convert(fixture("unknot_edge_2x2"))
    assert serialize_mosaic(converted) == "corner 1 2\n3 1\n"
    assert converted == fixture("unknot_corner")
    assert (trace_.input_nonempty, trace_.caps_found, trace_.pushed, trace_.output_nonempty) == (4, 2, 2, 2)


def test_convert_hopf(fixture):
    converted, trace_ = convert(fixture("hopf_edge"))
    assert trace_.to_dict() == {"input_nonempty": 12, "caps_found": 4, "pushed": 4, "output_nonempty": 8}
    assert validate(converted).valid
    assert identify(converted)[2].tag == "HopfLink"


def test_convert_ring_without_caps(fixture):
    converted, trace_ = convert(fixture("ring_edge_3x3"))
    assert trace_.caps_found == 0
    assert nonempty_count(converted) == 8
    assert identify(converted)[2].tag == "Unknot"


def test_convert_empty_mosaic():
    converted, trace_ = convert(Mosaic.empty(MosaicSystem.EDGE, 2, 3))
    assert nonempty_count(converted) == 0
    assert trace_.caps_found == 0


def test_convert_rejects_corner_input(fixture):
    with pytest.raises(WrongSystemError):
        convert(fixture("unknot_corner"))


def test_convert_preserves_link_type(edge_corpus):
    for m in edge_corpus:
        converted, trace_ = convert(m)
        assert validate(converted).valid
        assert trace_.output_nonempty == trace_.input_nonempty - trace_.pushed
        before, after = trace(m), trace(converted)
        assert before.component_count() == after.component_count(), serialize_mosaic(m)
        assert fingerprint(before) == fingerprint(after), serialize_mosaic(m)


def test_verify_bound_on_hopf(fixture):
    check = verify_bound(fixture("hopf_edge"), 6)
    assert check.to_dict() == {
        "t_upper": 12,
        "caps": 4,
        "tC_upper": 8,
        "claimed_tC": 6,
        "inequality_holds": True,
        "border_caps_only": True,
    }


def test_verify_bound_fails_for_large_claim(fixture):
    assert not verify_bound(fixture("hopf_edge"), 9).inequality_holds


def test_ring_caps_are_not_on_every_border(fixture):
    assert not verify_bound(fixture("ring_edge_3x3"), 6).border_caps_only


def test_push_in_caps_on_rotated_unknot(fixture):
    rotated = rotate_to_checkerboard(fixture("unknot_edge_2x2"))
    assert rotated.nonempty_cells() == [(0, 1), (1, 0), (1, 2), (2, 1)]
    pushed = push_in_caps(rotated, [((0, 1), (1, 2)), ((1, 0), (2, 1))])
    assert serialize_mosaic(pushed) == "corner 1 2\n3 1\n"
    assert push_in_caps(rotated, []) == rotated


def test_push_in_needs_cap_tiles(fixture):
    rotated = rotate_to_checkerboard(fixture("unknot_edge_2x2"))
    with pytest.raises(PushInError):
        push_in_caps(rotated, [((0, 0), (0, 1))])
