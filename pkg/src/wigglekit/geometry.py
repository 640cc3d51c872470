"""Pointer-trace primitives: samples, direction segments, and path resampling.

Everything in this module is pure and deterministic. Coordinates are viewport
pixels (y grows downward), timestamps are integer milliseconds since trace
start.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

Point = Tuple[float, float]


class Axis(Enum):
    """Principal motion axis a recognizer watches."""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    def value_of(self, x: float, y: float) -> float:
        return x if self is Axis.HORIZONTAL else y


class SamplePhase(Enum):
    MOVE = "move"
    CONTACT_START = "contact-start"
    CONTACT_END = "contact-end"


class PointerKind(Enum):
    MOUSE = "mouse"
    TOUCH = "touch"


@dataclass(frozen=True, slots=True)
class PointerSample:
    """One pointer event: position plus contact phase.

    t must be non-negative and non-decreasing within a trace; enforcement is
    the consumer's job (the engine rejects regressions, file loaders validate).
    """

    t: int
    x: float
    y: float
    phase: SamplePhase = SamplePhase.MOVE
    kind: PointerKind = PointerKind.MOUSE

    def point(self) -> Point:
        return (self.x, self.y)


Trace = List[PointerSample]


@dataclass(frozen=True, slots=True)
class DirectionSegment:
    """A maximal run of same-sign displacement along one axis.

    start/end are sample indices (inclusive); adjacent segments share their
    boundary sample. magnitude is the net displacement over the span, so a
    merged segment that swallowed a sub-jitter counter-move reports the
    physical amplitude, not the sum of its parts.
    """

    sign: int
    magnitude: float
    start: int
    end: int


def axis_values(trace: Sequence[PointerSample], axis: Axis) -> List[float]:
    return [axis.value_of(s.x, s.y) for s in trace]


def _raw_runs(values: Sequence[float]) -> List[List]:
    # mutable [sign, start, end] triples; zero deltas extend the open run
    runs: List[List] = []
    for i in range(len(values) - 1):
        d = values[i + 1] - values[i]
        if d == 0:
            if runs:
                runs[-1][2] = i + 1
            continue
        sign = 1 if d > 0 else -1
        if runs and runs[-1][0] == sign:
            runs[-1][2] = i + 1
        else:
            runs.append([sign, i, i + 1])
    return runs


def _merged_segments(
    values: Sequence[float], runs: Sequence[Sequence], jitter_eps: float
) -> List[DirectionSegment]:
    out: List[List] = []
    for sign, start, end in runs:
        if abs(values[end] - values[start]) < jitter_eps:
            continue
        if out and out[-1][0] == sign:
            out[-1][2] = end
        else:
            out.append([sign, start, end])
    return [
        DirectionSegment(sign, abs(values[end] - values[start]), start, end)
        for sign, start, end in out
    ]


def direction_segments(
    trace: Sequence[PointerSample], axis: Axis, jitter_eps: float = 0.0
) -> List[DirectionSegment]:
    """Split a trace into alternating-direction strokes along one axis.

    Runs whose net displacement is below jitter_eps are discarded, and
    same-sign neighbours left adjacent by a discard are merged. The result
    strictly alternates sign.
    """
    values = axis_values(trace, axis)
    return _merged_segments(values, _raw_runs(values), jitter_eps)


def count_reversals(
    trace: Sequence[PointerSample], axis: Axis, jitter_eps: float = 0.0
) -> int:
    """Number of direction changes between consecutive post-filter segments."""
    return max(0, len(direction_segments(trace, axis, jitter_eps)) - 1)


@dataclass(frozen=True, slots=True)
class LateralExtent:
    """Mean stroke amplitude over a trailing window of segments.

    partial flags that fewer segments existed than were asked for; the mean
    is then taken over what was available (0.0 for an empty trace).
    """

    mean_px: float
    used_segments: int
    requested_segments: int

    @property
    def partial(self) -> bool:
        return self.used_segments < self.requested_segments


def lateral_extent(
    trace: Sequence[PointerSample],
    axis: Axis,
    last_k_segments: int,
    jitter_eps: float = 0.0,
) -> LateralExtent:
    segments = direction_segments(trace, axis, jitter_eps)
    return extent_of_segments(segments, last_k_segments)


def extent_of_segments(
    segments: Sequence[DirectionSegment], last_k_segments: int
) -> LateralExtent:
    """Extent over an already-computed segment list (tail window)."""
    if last_k_segments < 1:
        raise ValueError("window must cover at least one segment")
    window = segments[-last_k_segments:]
    if not window:
        return LateralExtent(0.0, 0, last_k_segments)
    mean = sum(seg.magnitude for seg in window) / len(window)
    return LateralExtent(mean, len(window), last_k_segments)


def path_centroid(points: Sequence[Point]) -> Point:
    """Arithmetic mean of the points. Raises on an empty path."""
    if not points:
        raise ValueError("centroid of an empty path")
    n = len(points)
    return (sum(p[0] for p in points) / n, sum(p[1] for p in points) / n)


def trace_points(trace: Sequence[PointerSample]) -> List[Point]:
    return [(s.x, s.y) for s in trace]


def resample_path(points: Sequence[Point], n: int) -> List[Point]:
    """Resample a polyline to n points equally spaced along its arc length.

    The first and last input points are preserved exactly. Interior points
    are linearly interpolated at arc positions k * L / (n - 1). A path with
    zero arc length (all points coincident) collapses to n copies of the
    single position.
    """
    if n < 2:
        raise ValueError("need at least 2 output points")
    if not points:
        raise ValueError("cannot resample an empty path")
    if len(points) == 1:
        return [points[0]] * n

    cum = [0.0]
    for i in range(len(points) - 1):
        cum.append(cum[-1] + math.dist(points[i], points[i + 1]))
    total = cum[-1]
    if total == 0.0:
        return [points[0]] * n

    out: List[Point] = [points[0]]
    step = total / (n - 1)
    j = 0
    for k in range(1, n - 1):
        target = step * k
        while cum[j + 1] < target:
            j += 1
        seg = cum[j + 1] - cum[j]
        t = 0.0 if seg == 0.0 else (target - cum[j]) / seg
        ax, ay = points[j]
        bx, by = points[j + 1]
        out.append((ax + t * (bx - ax), ay + t * (by - ay)))
    out.append(points[-1])
    return out
