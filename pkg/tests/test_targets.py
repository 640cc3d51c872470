"""Target map validation, point voting, and tie-break determinism."""
from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wigglekit.errors import FormatError
from wigglekit.targets import (
    Granularity,
    Rect,
    TargetMap,
    TargetRegion,
    Viewport,
    acquire_target,
    scroll_adjust,
    target_under_point,
)

VP = Viewport(1000.0, 800.0)


def block(bid, x, y, w, h, **kw):
    return TargetRegion(id=bid, rect=Rect(x, y, w, h), granularity=Granularity.BLOCK, **kw)


def word(wid, x, y, w, h, parent, **kw):
    return TargetRegion(
        id=wid, rect=Rect(x, y, w, h), granularity=Granularity.WORD, parent_id=parent, **kw
    )


def two_column_map():
    return TargetMap(
        regions=(
            block("left", 50, 50, 400, 600),
            block("right", 550, 50, 400, 600),
            word("leftw0", 60, 60, 80, 20, "left"),
            word("leftw1", 150, 60, 80, 20, "left"),
        ),
        viewport=VP,
    )


# -- construction / validation ------------------------------------------------------


def test_duplicate_ids_rejected():
    with pytest.raises(FormatError):
        TargetMap(regions=(block("a", 0, 0, 10, 10), block("a", 20, 0, 10, 10)), viewport=VP)


def test_unknown_parent_rejected():
    with pytest.raises(FormatError):
        TargetMap(regions=(word("w", 0, 0, 10, 10, "ghost"),), viewport=VP)


def test_word_escaping_parent_rejected():
    with pytest.raises(FormatError):
        TargetMap(
            regions=(block("b", 0, 0, 100, 100), word("w", 90, 90, 50, 20, "b")),
            viewport=VP,
        )


def test_same_granularity_overlap_rejected():
    with pytest.raises(FormatError):
        TargetMap(
            regions=(block("a", 0, 0, 100, 100), block("b", 50, 50, 100, 100)),
            viewport=VP,
        )


def test_shared_edge_is_not_overlap():
    target_map = TargetMap(
        regions=(block("a", 0, 0, 100, 100), block("b", 100, 0, 100, 100)),
        viewport=VP,
    )
    assert len(target_map.regions) == 2


def test_nonpositive_viewport_rejected():
    with pytest.raises(FormatError):
        TargetMap(regions=(), viewport=Viewport(0.0, 100.0))


def test_rect_edges_are_closed():
    r = Rect(10, 10, 20, 20)
    assert r.contains((10, 10))
    assert r.contains((30, 30))
    assert not r.contains((30.001, 30))


# -- acquisition ---------------------------------------------------------------------


def test_densest_block_wins():
    target_map = two_column_map()
    path = [(100.0 + (i % 2) * 60.0, 300.0) for i in range(16)]
    assert acquire_target(path, target_map, Granularity.BLOCK) == "left"


def test_path_outside_everything_abstains():
    target_map = two_column_map()
    path = [(480.0, 700.0 + i) for i in range(8)]
    assert acquire_target(path, target_map, Granularity.BLOCK) is None


def test_tie_breaks_on_centroid_containment():
    # straight line stretching over both blocks equally; centroid sits in "a"
    target_map = TargetMap(
        regions=(block("a", 0, 0, 100, 100), block("b", 100, 0, 100, 100)),
        viewport=VP,
    )
    path = [(10.0, 50.0), (130.0, 50.0)]  # 64 resampled points, more in a
    winner = acquire_target(path, target_map, Granularity.BLOCK)
    assert winner == "a"


def test_tie_breaks_on_area_then_id():
    # one point on a shared corner of four rects: equal votes, equal centroid
    # containment; smaller area wins, then smaller id
    target_map = TargetMap(
        regions=(
            block("d", 100, 100, 300, 300),
            block("c", 0, 0, 100, 100),
            block("b", 100, 0, 200, 100),
            block("a", 0, 100, 100, 200),
        ),
        viewport=VP,
    )
    path = [(100.0, 100.0), (100.0, 100.0)]
    # all four contain every point and the centroid; areas: c=10000, a=20000,
    # b=20000, d=90000 -> c wins outright
    assert acquire_target(path, target_map, Granularity.BLOCK) == "c"

    equal_area = TargetMap(
        regions=(block("n", 100, 0, 100, 100), block("m", 0, 0, 100, 100)),
        viewport=VP,
    )
    assert acquire_target([(100.0, 50.0)] * 2, equal_area, Granularity.BLOCK) == "m"


def test_word_winner_needs_parent_under_centroid():
    target_map = TargetMap(
        regions=(
            block("b", 0, 0, 200, 100),
            word("bw", 10, 40, 60, 20, "b"),
        ),
        viewport=VP,
    )
    inside = [(20.0 + (i % 2) * 30.0, 50.0) for i in range(10)]
    assert acquire_target(inside, target_map, Granularity.WORD) == "bw"

    # drag the bulk of the motion outside the block: the word still gets the
    # most votes among words, but the centroid leaves the parent -> abstain
    skewed = [(20.0, 50.0), (30.0, 50.0)] + [(700.0, 50.0)] * 20
    assert acquire_target(skewed, target_map, Granularity.WORD) is None


def test_no_candidates_at_granularity_abstains():
    only_blocks = TargetMap(regions=(block("b", 0, 0, 100, 100),), viewport=VP)
    assert acquire_target([(50.0, 50.0)] * 2, only_blocks, Granularity.WORD) is None
    assert acquire_target([], only_blocks, Granularity.BLOCK) is None


def test_target_under_point_prefers_smaller_area():
    # nested-feel layout via word/block split is disallowed for same
    # granularity, so exercise the edge-sharing case
    target_map = TargetMap(
        regions=(block("big", 0, 0, 500, 500), block("small", 500, 0, 100, 100)),
        viewport=VP,
    )
    assert target_under_point((500.0, 50.0), target_map) == "small"
    assert target_under_point((499.0, 50.0), target_map) == "big"
    assert target_under_point((900.0, 700.0), target_map) is None


# -- serialization / scroll ------------------------------------------------------------


def test_json_round_trip():
    target_map = two_column_map()
    wire = target_map.to_json_dict()
    back = TargetMap.from_json_dict(json.loads(json.dumps(wire)))
    assert back == target_map
    assert back.to_json_dict() == wire


def test_from_json_rejects_garbage():
    with pytest.raises(FormatError):
        TargetMap.from_json_dict({"viewport": {"w": 10}, "regions": []})
    with pytest.raises(FormatError):
        TargetMap.from_json_dict(
            {
                "viewport": {"w": 10, "h": 10},
                "regions": [{"id": "x", "rect": [0, 0, 1], "granularity": "block"}],
            }
        )
    with pytest.raises(FormatError):
        TargetMap.from_json_dict(
            {
                "viewport": {"w": 10, "h": 10},
                "regions": [{"id": "x", "rect": [0, 0, 1, 1], "granularity": "huge"}],
            }
        )


def test_scroll_adjust_translates_rects_only():
    target_map = two_column_map()
    moved = scroll_adjust(target_map, -120.0)
    assert moved.viewport == target_map.viewport
    assert moved.by_id("left").rect.y == target_map.by_id("left").rect.y - 120.0
    assert moved.by_id("left").rect.x == target_map.by_id("left").rect.x


# -- properties -------------------------------------------------------------------------


@given(
    px=st.floats(min_value=0, max_value=1000, allow_nan=False),
    py=st.floats(min_value=0, max_value=800, allow_nan=False),
)
@settings(max_examples=100)
def test_stationary_path_wins_containing_block(px, py):
    target_map = two_column_map()
    winner = acquire_target([(px, py), (px, py)], target_map, Granularity.BLOCK)
    inside = [r.id for r in target_map.at_granularity(Granularity.BLOCK) if r.rect.contains((px, py))]
    if inside:
        assert winner in inside
    else:
        assert winner is None


@given(dy=st.floats(min_value=-500, max_value=500, allow_nan=False))
@settings(max_examples=100)
def test_scroll_round_trip_identity(dy):
    target_map = two_column_map()
    back = scroll_adjust(scroll_adjust(target_map, dy), -dy)
    for region, original in zip(back.regions, target_map.regions):
        assert abs(region.rect.y - original.rect.y) < 1e-9
