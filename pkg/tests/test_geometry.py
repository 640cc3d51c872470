"""Direction segmentation, extent, and resampling against frozen values."""
from __future__ import annotations

import math

from hypothesis import given, settings
from hypothesis import strategies as st

from wigglekit.geometry import (
    Axis,
    PointerKind,
    PointerSample,
    SamplePhase,
    count_reversals,
    direction_segments,
    extent_of_segments,
    lateral_extent,
    path_centroid,
    resample_path,
)


def trace_from_x(xs, y=100.0, dt=8):
    return [
        PointerSample(t=i * dt, x=float(x), y=y, phase=SamplePhase.MOVE, kind=PointerKind.MOUSE)
        for i, x in enumerate(xs)
    ]


def trace_from_y(ys, x=100.0, dt=8):
    return [
        PointerSample(t=i * dt, x=x, y=float(y), phase=SamplePhase.MOVE, kind=PointerKind.TOUCH)
        for i, y in enumerate(ys)
    ]


# -- reference implementation kept deliberately naive ---------------------------


def brute_reversals(values, eps):
    """Sign changes between consecutive kept runs, the slow obvious way."""
    runs = []
    for i in range(1, len(values)):
        delta = values[i] - values[i - 1]
        if delta == 0:
            if runs:
                runs[-1][2] = i
            continue
        sign = 1 if delta > 0 else -1
        if runs and runs[-1][0] == sign:
            runs[-1][2] = i
        else:
            runs.append([sign, i - 1, i])
    kept = []
    for sign, start, end in runs:
        if abs(values[end] - values[start]) < eps:
            continue
        if kept and kept[-1][0] == sign:
            kept[-1][2] = end
        else:
            kept.append([sign, start, end])
    return max(0, len(kept) - 1)


# -- frozen cases ----------------------------------------------------------------


def test_square_wave_counts_five_reversals():
    trace = trace_from_x([0, 30, 0, 30, 0, 30, 0])
    assert count_reversals(trace, Axis.HORIZONTAL) == 5


def test_jitter_run_is_dropped_and_neighbours_merge():
    # deltas +30, -1, +30 with eps=2: the -1 run disappears, the two
    # positive runs fuse into one, so no reversal is left
    trace = trace_from_x([0, 30, 29, 59])
    assert count_reversals(trace, Axis.HORIZONTAL, jitter_eps=2.0) == 0
    segments = direction_segments(trace, Axis.HORIZONTAL, jitter_eps=2.0)
    assert len(segments) == 1
    assert segments[0].magnitude == 59.0


def test_monotone_path_has_no_reversals():
    trace = trace_from_x([0, 10, 25, 40, 80])
    assert count_reversals(trace, Axis.HORIZONTAL) == 0


def test_pure_jitter_leaves_no_segments():
    trace = trace_from_x([0, 1, 0, 1, 0])
    assert direction_segments(trace, Axis.HORIZONTAL, jitter_eps=2.0) == []
    assert count_reversals(trace, Axis.HORIZONTAL, jitter_eps=2.0) == 0


def test_zero_deltas_extend_the_open_run():
    trace = trace_from_x([0, 10, 10, 10, 20, 5])
    segments = direction_segments(trace, Axis.HORIZONTAL)
    assert [s.sign for s in segments] == [1, -1]
    assert [s.magnitude for s in segments] == [20.0, 15.0]


def test_vertical_axis_reads_y():
    trace = trace_from_y([0, 40, 0, 40, 0, 40])
    assert count_reversals(trace, Axis.VERTICAL) == 4
    assert count_reversals(trace, Axis.HORIZONTAL) == 0


def test_extent_means_trailing_window():
    # stroke magnitudes 30, 50, 70, 50, 30
    trace = trace_from_x([0, 30, -20, 50, 0, 30])
    extent = lateral_extent(trace, Axis.HORIZONTAL, last_k_segments=5)
    assert extent.mean_px == 46.0
    assert extent.used_segments == 5
    assert not extent.partial

    tail = lateral_extent(trace, Axis.HORIZONTAL, last_k_segments=2)
    assert tail.mean_px == 40.0  # last two strokes: 50 and 30


def test_extent_partial_window():
    trace = trace_from_x([0, 60, -20])  # magnitudes 60, 80
    extent = lateral_extent(trace, Axis.HORIZONTAL, last_k_segments=5)
    assert extent.mean_px == 70.0
    assert extent.used_segments == 2
    assert extent.partial


def test_extent_rejects_empty_window():
    import pytest

    with pytest.raises(ValueError):
        extent_of_segments([], 0)


def test_extent_of_empty_trace():
    extent = lateral_extent([], Axis.HORIZONTAL, last_k_segments=5)
    assert extent.mean_px == 0.0
    assert extent.partial


def test_resample_straight_segment():
    assert resample_path([(0.0, 0.0), (10.0, 0.0)], 3) == [
        (0.0, 0.0),
        (5.0, 0.0),
        (10.0, 0.0),
    ]


def test_resample_l_shape():
    out = resample_path([(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)], 5)
    assert out == [(0.0, 0.0), (5.0, 0.0), (10.0, 0.0), (10.0, 5.0), (10.0, 10.0)]


def test_resample_degenerate_paths_repeat_the_point():
    assert resample_path([(3.0, 4.0)], 4) == [(3.0, 4.0)] * 4
    assert resample_path([(3.0, 4.0), (3.0, 4.0)], 3) == [(3.0, 4.0)] * 3


def test_resample_rejects_bad_input():
    import pytest

    with pytest.raises(ValueError):
        resample_path([], 4)
    with pytest.raises(ValueError):
        resample_path([(0.0, 0.0), (1.0, 0.0)], 1)


def test_centroid():
    assert path_centroid([(0.0, 0.0), (10.0, 0.0), (5.0, 30.0)]) == (5.0, 10.0)


# -- properties -------------------------------------------------------------------

finite_vals = st.lists(
    st.floats(min_value=-500, max_value=500, allow_nan=False), min_size=2, max_size=60
)
small_eps = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)


@given(xs=finite_vals, eps=small_eps)
@settings(max_examples=100)
def test_reversals_match_brute_force(xs, eps):
    trace = trace_from_x(xs)
    assert count_reversals(trace, Axis.HORIZONTAL, eps) == brute_reversals(xs, eps)


# quarter-pixel grid keeps x + shift exactly representable, so the deltas
# survive translation bit-for-bit
dyadic_vals = st.lists(
    st.integers(min_value=-2000, max_value=2000).map(lambda k: k / 4.0),
    min_size=2,
    max_size=60,
)


@given(xs=dyadic_vals, shift=st.integers(min_value=-10_000, max_value=10_000))
@settings(max_examples=100)
def test_reversals_translation_invariant(xs, shift):
    base = trace_from_x(xs)
    moved = trace_from_x([x + shift for x in xs])
    assert count_reversals(base, Axis.HORIZONTAL) == count_reversals(moved, Axis.HORIZONTAL)


@given(xs=finite_vals, eps=small_eps)
@settings(max_examples=100)
def test_mirror_flips_signs_keeps_magnitudes(xs, eps):
    fwd = direction_segments(trace_from_x(xs), Axis.HORIZONTAL, eps)
    rev = direction_segments(trace_from_x([-x for x in xs]), Axis.HORIZONTAL, eps)
    assert [s.sign for s in rev] == [-s.sign for s in fwd]
    assert [s.magnitude for s in rev] == [s.magnitude for s in fwd]


@given(xs=finite_vals, eps=small_eps)
@settings(max_examples=100)
def test_filtering_never_adds_reversals(xs, eps):
    trace = trace_from_x(xs)
    assert count_reversals(trace, Axis.HORIZONTAL, eps) <= count_reversals(
        trace, Axis.HORIZONTAL, 0.0
    )


@given(xs=finite_vals)
@settings(max_examples=100)
def test_segments_alternate_signs(xs):
    segments = direction_segments(trace_from_x(xs), Axis.HORIZONTAL, 3.0)
    for a, b in zip(segments, segments[1:]):
        assert a.sign != b.sign


@given(
    start=st.tuples(
        st.floats(min_value=-100, max_value=100), st.floats(min_value=-100, max_value=100)
    ),
    end=st.tuples(
        st.floats(min_value=-100, max_value=100), st.floats(min_value=-100, max_value=100)
    ),
    n=st.integers(min_value=2, max_value=40),
)
@settings(max_examples=100)
def test_resample_spacing_uniform_on_straight_paths(start, end, n):
    out = resample_path([start, end], n)
    assert len(out) == n
    assert out[0] == start and out[-1] == end
    gaps = [math.dist(a, b) for a, b in zip(out, out[1:])]
    if gaps and max(gaps) > 0:
        assert max(gaps) - min(gaps) <= 1e-6 * max(gaps) + 1e-9


@given(
    pts=st.lists(
        st.tuples(
            st.floats(min_value=-300, max_value=300), st.floats(min_value=-300, max_value=300)
        ),
        min_size=2,
        max_size=30,
    ),
    n=st.integers(min_value=2, max_value=64),
)
@settings(max_examples=100)
def test_resample_endpoints_exact_and_count(pts, n):
    out = resample_path(pts, n)
    assert len(out) == n
    assert out[0] == pts[0]
    assert out[-1] == pts[-1]
