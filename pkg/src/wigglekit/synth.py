"""Seeded synthetic pointer traces, corpus layouts, and brute-force oracles.

Everything here is deterministic given a TraceSpec's seed. The oracles are
deliberately naive re-implementations kept free of the production code paths
(no imports from the engine, independent resampling and voting) so tests can
compare two routes to the same answer.

Noise shaping: wiggle strokes and swipes take independent Gaussian jitter on
both coordinates. The non-gesture kinds keep their watched axis clean by
construction (monotone sweeps, pauses longer than the idle timeout between
direction changes, zigzags only while a button is held) so that a trace
labeled non-wiggle can never legitimately activate, whatever the seed.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .events import SwipeDirection
from .geometry import Axis, Point, PointerKind, PointerSample, SamplePhase, Trace
from .targets import Granularity, Rect, TargetMap, TargetRegion, Viewport


class TraceKind(Enum):
    WIGGLE = "wiggle"
    WIGGLE_SWIPE = "wiggle+swipe"
    READING_DRIFT = "reading-drift"
    SCROLL = "scroll"
    DRAG_SELECT = "drag-select"
    CLICK_MOVE = "click-move"


@dataclass(frozen=True)
class TraceSpec:
    kind: TraceKind
    seed: int = 0
    mode: str = "desktop"  # "desktop" | "mobile"
    amplitude_px: float = 60.0
    cycles: int = 4
    noise_sigma_px: float = 0.0
    sample_rate_hz: float = 125.0
    anchor: Point = (640.0, 400.0)
    swipe_direction: Optional[SwipeDirection] = None
    swipe_fraction: float = 0.5
    viewport: Viewport = Viewport(1280.0, 800.0)
    axis: Optional[Axis] = None  # override the mode's watched axis

    def __post_init__(self) -> None:
        if self.mode not in ("desktop", "mobile"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")
        if self.amplitude_px <= 0:
            raise ValueError("amplitude_px must be positive")
        if self.noise_sigma_px < 0:
            raise ValueError("noise_sigma_px must be non-negative")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        if not 0 <= self.swipe_fraction <= 1:
            raise ValueError("swipe_fraction must be in [0, 1]")

    @property
    def principal_axis(self) -> Axis:
        if self.axis is not None:
            return self.axis
        return Axis.HORIZONTAL if self.mode == "desktop" else Axis.VERTICAL

    @property
    def pointer_kind(self) -> PointerKind:
        return PointerKind.MOUSE if self.mode == "desktop" else PointerKind.TOUCH


class _Builder:
    """Accumulates samples on a float timeline, emitting integer ms stamps."""

    def __init__(self, spec: TraceSpec) -> None:
        self.spec = spec
        self.dt = 1000.0 / spec.sample_rate_hz
        self.t = 0.0
        self.samples: List[PointerSample] = []
        self.rng = random.Random(spec.seed)

    def _clamp(self, x: float, y: float) -> Point:
        vp = self.spec.viewport
        return (min(max(x, 1.0), vp.w - 1.0), min(max(y, 1.0), vp.h - 1.0))

    def emit(self, x: float, y: float, phase: SamplePhase = SamplePhase.MOVE) -> None:
        x, y = self._clamp(x, y)
        self.samples.append(
            PointerSample(round(self.t), x, y, phase, self.spec.pointer_kind)
        )
        self.t += self.dt

    def pause(self, ms: float) -> None:
        self.t += ms

    def last_point(self) -> Point:
        s = self.samples[-1]
        return (s.x, s.y)

    def glide(
        self,
        target: Point,
        duration_ms: float,
        noise: float = 0.0,
        monotone_axis: Optional[Axis] = None,
    ) -> None:
        """Linear run from the last point to target.

        With monotone_axis set, jitter on that axis is suppressed so the run
        stays a single direction segment regardless of the seed.
        """
        start = self.last_point()
        steps = max(2, round(duration_ms / self.dt))
        for j in range(1, steps + 1):
            f = j / steps
            x = start[0] + (target[0] - start[0]) * f
            y = start[1] + (target[1] - start[1]) * f
            nx = self.rng.gauss(0.0, noise) if noise > 0 else 0.0
            ny = self.rng.gauss(0.0, noise) if noise > 0 else 0.0
            if monotone_axis is Axis.HORIZONTAL:
                nx = 0.0
            elif monotone_axis is Axis.VERTICAL:
                ny = 0.0
            if j == steps:
                nx = ny = 0.0  # land on target so strokes keep their amplitude
            self.emit(x + nx, y + ny)


def generate(spec: TraceSpec) -> Trace:
    """Produce the deterministic trace described by spec."""
    builder = _Builder(spec)
    if spec.kind is TraceKind.WIGGLE:
        _gen_wiggle(builder, with_swipe=False)
    elif spec.kind is TraceKind.WIGGLE_SWIPE:
        _gen_wiggle(builder, with_swipe=True)
    elif spec.kind is TraceKind.READING_DRIFT:
        _gen_reading_drift(builder)
    elif spec.kind is TraceKind.SCROLL:
        _gen_scroll(builder)
    elif spec.kind is TraceKind.DRAG_SELECT:
        _gen_drag_select(builder)
    elif spec.kind is TraceKind.CLICK_MOVE:
        _gen_click_move(builder)
    else:  # pragma: no cover
        raise ValueError(f"unknown trace kind {spec.kind!r}")
    return builder.samples


def _axis_target(anchor: Point, axis: Axis, offset: float) -> Point:
    if axis is Axis.HORIZONTAL:
        return (anchor[0] + offset, anchor[1])
    return (anchor[0], anchor[1] + offset)


def _gen_wiggle(builder: _Builder, with_swipe: bool) -> None:
    spec = builder.spec
    rng = builder.rng
    axis = spec.principal_axis
    half = spec.amplitude_px / 2.0
    mobile = spec.mode == "mobile"
    side = rng.choice((-1.0, 1.0))
    start = _axis_target(spec.anchor, axis, -side * half)
    if mobile:
        builder.emit(start[0], start[1], SamplePhase.CONTACT_START)
    else:
        builder.emit(start[0], start[1])
    strokes = 2 * spec.cycles
    for _ in range(strokes):
        target = _axis_target(spec.anchor, axis, side * half)
        builder.glide(target, rng.uniform(70.0, 130.0), noise=spec.noise_sigma_px)
        side = -side
    if with_swipe:
        _gen_swipe_tail(builder)
    if mobile:
        p = builder.last_point()
        builder.emit(p[0], p[1], SamplePhase.CONTACT_END)


def _gen_swipe_tail(builder: _Builder) -> None:
    spec = builder.spec
    aim = spec.swipe_direction or SwipeDirection.RIGHT
    if spec.mode == "mobile" and not aim.horizontal:
        raise ValueError("mobile extension swipes are horizontal only")
    # settle back on the anchor so the swipe displacement is axis-clean
    builder.glide(spec.anchor, 60.0)
    ax, ay = spec.anchor
    vp = spec.viewport
    available = {
        SwipeDirection.RIGHT: vp.w - ax,
        SwipeDirection.LEFT: ax,
        SwipeDirection.DOWN: vp.h - ay,
        SwipeDirection.UP: ay,
    }[aim]
    reach = spec.swipe_fraction * available
    target = {
        SwipeDirection.RIGHT: (ax + reach, ay),
        SwipeDirection.LEFT: (ax - reach, ay),
        SwipeDirection.DOWN: (ax, ay + reach),
        SwipeDirection.UP: (ax, ay - reach),
    }[aim]
    horizontal = aim.horizontal
    builder.glide(
        target,
        builder.rng.uniform(180.0, 280.0),
        noise=spec.noise_sigma_px,
        monotone_axis=Axis.HORIZONTAL if horizontal else Axis.VERTICAL,
    )


def _gen_reading_drift(builder: _Builder) -> None:
    """Short monotone sweeps separated by fixation pauses.

    Direction may flip between sweeps (line returns), never inside one, and
    the pauses outlast any sane idle timeout, so each tracking episode sees
    at most one direction segment on the watched axis.
    """
    spec = builder.spec
    rng = builder.rng
    axis = spec.principal_axis
    pos = list(spec.anchor)
    sweeps = rng.randint(4, 9)
    heading = 1.0
    for i in range(sweeps):
        if i > 0:
            builder.pause(rng.uniform(220.0, 650.0))
        span = rng.uniform(60.0, 240.0) * heading
        drift = rng.uniform(-12.0, 12.0)
        if axis is Axis.HORIZONTAL:
            target = (pos[0] + span, pos[1] + drift)
        else:
            target = (pos[0] + drift, pos[1] + span)
        if not builder.samples:
            builder.emit(pos[0], pos[1])
        builder.glide(target, rng.uniform(120.0, 420.0), monotone_axis=axis)
        pos = list(builder.last_point())
        if rng.random() < 0.4:
            heading = -heading


def _gen_scroll(builder: _Builder) -> None:
    spec = builder.spec
    rng = builder.rng
    if spec.mode == "desktop":
        # wheel scrolling moves content, not the pointer sideways
        x = spec.anchor[0]
        y = spec.anchor[1]
        builder.emit(x, y)
        for _ in range(rng.randint(3, 6)):
            span = rng.uniform(60.0, 200.0) * rng.choice((-1.0, 1.0))
            builder.glide((x, y + span), rng.uniform(150.0, 320.0), monotone_axis=Axis.HORIZONTAL)
            y = builder.last_point()[1]
            builder.pause(rng.uniform(30.0, 120.0))
        return
    # mobile: a few monotone flicks, each its own contact
    pos = list(spec.anchor)
    for i in range(rng.randint(2, 4)):
        if i > 0:
            builder.pause(rng.uniform(200.0, 500.0))
        builder.emit(pos[0], pos[1], SamplePhase.CONTACT_START)
        span = rng.uniform(120.0, 300.0) * (-1.0 if rng.random() < 0.8 else 1.0)
        builder.glide((pos[0], pos[1] + span), rng.uniform(140.0, 260.0), monotone_axis=Axis.VERTICAL)
        p = builder.last_point()
        builder.emit(p[0], p[1], SamplePhase.CONTACT_END)
        pos = [p[0], min(max(p[1], 80.0), spec.viewport.h - 80.0)]


def _gen_drag_select(builder: _Builder) -> None:
    """Approach, press, scrub (with backtracks while held), release."""
    spec = builder.spec
    rng = builder.rng
    start = spec.anchor
    builder.emit(start[0] - rng.uniform(40.0, 120.0), start[1] - rng.uniform(10.0, 60.0))
    builder.glide(start, rng.uniform(150.0, 300.0), monotone_axis=spec.principal_axis)
    p = builder.last_point()
    builder.emit(p[0], p[1], SamplePhase.CONTACT_START)
    if spec.mode == "desktop":
        # selection scrubbing wiggles freely; the held button shields it
        x = p[0]
        for _ in range(rng.randint(1, 4)):
            x += rng.uniform(60.0, 180.0)
            builder.glide((x, p[1] + rng.uniform(-6.0, 6.0)), rng.uniform(90.0, 180.0))
            if rng.random() < 0.6:
                x -= rng.uniform(20.0, 70.0)
                builder.glide((x, p[1] + rng.uniform(-6.0, 6.0)), rng.uniform(60.0, 120.0))
    else:
        builder.glide(
            (p[0] + rng.uniform(-30.0, 30.0), p[1] + rng.uniform(80.0, 200.0)),
            rng.uniform(200.0, 400.0),
            monotone_axis=Axis.VERTICAL,
        )
    p = builder.last_point()
    builder.emit(p[0], p[1], SamplePhase.CONTACT_END)


def _gen_click_move(builder: _Builder) -> None:
    """Glide to a point with one overshoot correction, then click or tap."""
    spec = builder.spec
    rng = builder.rng
    axis = spec.principal_axis
    target = spec.anchor
    sx = target[0] + rng.uniform(120.0, 300.0) * rng.choice((-1.0, 1.0))
    sy = target[1] + rng.uniform(-80.0, 80.0)
    builder.emit(sx, sy)
    overshoot = rng.uniform(8.0, 28.0)
    direction = 1.0 if target[0] >= sx else -1.0
    if axis is Axis.HORIZONTAL:
        past = (target[0] + direction * overshoot, target[1])
    else:
        past = (target[0], target[1] + overshoot)
    builder.glide(past, rng.uniform(160.0, 320.0), monotone_axis=axis)
    builder.glide(target, rng.uniform(60.0, 120.0), monotone_axis=axis)
    p = builder.last_point()
    builder.emit(p[0], p[1], SamplePhase.CONTACT_START)
    builder.pause(rng.uniform(40.0, 90.0))
    builder.emit(p[0], p[1], SamplePhase.CONTACT_END)


def mirror_trace(trace: Sequence[PointerSample], about_x: float) -> Trace:
    """Reflect a trace horizontally about a vertical line."""
    return [
        PointerSample(s.t, 2.0 * about_x - s.x, s.y, s.phase, s.kind) for s in trace
    ]


# -- corpus layouts ----------------------------------------------------------


def single_block_map(
    viewport: Viewport = Viewport(1280.0, 800.0),
    block_id: str = "b0",
    text: str = "The quick brown fox jumps over the lazy dog.",
    source_url: str = "https://content.example/page/1",
) -> TargetMap:
    """One generous block centered in the viewport."""
    w = viewport.w * 0.7
    h = viewport.h * 0.6
    rect = Rect((viewport.w - w) / 2.0, (viewport.h - h) / 2.0, w, h)
    region = TargetRegion(block_id, rect, Granularity.BLOCK, text, source_url)
    return TargetMap(regions=(region,), viewport=viewport)


_WORDS = (
    "signal", "harbor", "kernel", "meadow", "lantern", "quartz", "ember",
    "drift", "cobalt", "summit", "willow", "anchor", "fathom", "prairie",
)


def random_layout(
    rng: random.Random,
    viewport: Viewport = Viewport(1280.0, 800.0),
    with_words: bool = True,
) -> TargetMap:
    """Random non-overlapping grid of blocks, some subdivided into words."""
    rows = rng.randint(2, 4)
    cols = rng.randint(1, 3)
    gutter = rng.uniform(12.0, 32.0)
    cell_w = (viewport.w - gutter * (cols + 1)) / cols
    cell_h = (viewport.h - gutter * (rows + 1)) / rows
    regions: List[TargetRegion] = []
    for r in range(rows):
        for c in range(cols):
            if rng.random() < 0.15:
                continue  # leave a hole so some paths fall on nothing
            x = gutter + c * (cell_w + gutter)
            y = gutter + r * (cell_h + gutter)
            block_id = f"b{r}{c}"
            domain = f"https://site{(r * cols + c) % 3}.example/article/{r}{c}"
            regions.append(
                TargetRegion(
                    block_id,
                    Rect(x, y, cell_w, cell_h),
                    Granularity.BLOCK,
                    " ".join(rng.choice(_WORDS) for _ in range(4)),
                    domain,
                )
            )
            if with_words and rng.random() < 0.6:
                wx = x + rng.uniform(4.0, 12.0)
                wy = y + cell_h * rng.uniform(0.2, 0.6)
                wh = min(28.0, cell_h * 0.3)
                k = 0
                while wx + 34.0 < x + cell_w - 4.0 and k < 8:
                    ww = rng.uniform(30.0, 90.0)
                    ww = min(ww, x + cell_w - 4.0 - wx)
                    if ww < 24.0:
                        break
                    regions.append(
                        TargetRegion(
                            f"{block_id}w{k}",
                            Rect(wx, wy, ww, wh),
                            Granularity.WORD,
                            rng.choice(_WORDS),
                            domain,
                            parent_id=block_id,
                        )
                    )
                    wx += ww + rng.uniform(6.0, 14.0)
                    k += 1
    return TargetMap(regions=tuple(regions), viewport=viewport)


# -- oracles ------------------------------------------------------------------


def oracle_reversals(
    trace: Sequence[PointerSample], axis: Axis, jitter_eps: float = 0.0
) -> int:
    """Brute-force reversal count: runs, jitter filter, merge, alternations.

    Kept independent of the production segmenter on purpose.
    """
    if axis is Axis.HORIZONTAL:
        values = [s.x for s in trace]
    else:
        values = [s.y for s in trace]
    # phase 1: raw same-sign runs as (start, end) index pairs
    runs: List[Tuple[int, int]] = []
    prev_sign = 0
    for i in range(1, len(values)):
        d = values[i] - values[i - 1]
        sign = 0 if d == 0 else (1 if d > 0 else -1)
        if sign == 0:
            if prev_sign != 0:
                runs[-1] = (runs[-1][0], i)
            continue
        if sign == prev_sign:
            runs[-1] = (runs[-1][0], i)
        else:
            runs.append((i - 1, i))
            prev_sign = sign
    # phase 2: drop sub-jitter runs, merge same-direction neighbours
    kept: List[Tuple[int, int]] = []
    for start, end in runs:
        if abs(values[end] - values[start]) < jitter_eps:
            continue
        if kept:
            pd = values[kept[-1][1]] - values[kept[-1][0]]
            cd = values[end] - values[start]
            if (pd > 0) == (cd > 0):
                kept[-1] = (kept[-1][0], end)
                continue
        kept.append((start, end))
    return max(0, len(kept) - 1)


def oracle_activation_index(
    trace: Sequence[PointerSample],
    axis: Axis,
    threshold: int,
    jitter_eps: float,
) -> Optional[int]:
    """First sample index whose prefix reaches the reversal threshold."""
    for i in range(len(trace)):
        if oracle_reversals(trace[: i + 1], axis, jitter_eps) >= threshold:
            return i
    return None


def _oracle_resample(points: Sequence[Point], n: int) -> List[Point]:
    # classic incremental walk; pads with the final point on float shortfall
    pts = [(float(p[0]), float(p[1])) for p in points]
    if len(pts) == 1:
        return pts * n
    total = 0.0
    for i in range(len(pts) - 1):
        total += math.dist(pts[i], pts[i + 1])
    if total == 0.0:
        return [pts[0]] * n
    interval = total / (n - 1)
    out = [pts[0]]
    accumulated = 0.0
    prev = pts[0]
    i = 1
    while i < len(pts):
        d = math.dist(prev, pts[i])
        if d > 0 and accumulated + d >= interval:
            t = (interval - accumulated) / d
            q = (prev[0] + t * (pts[i][0] - prev[0]), prev[1] + t * (pts[i][1] - prev[1]))
            out.append(q)
            prev = q
            accumulated = 0.0
        else:
            accumulated += d
            prev = pts[i]
            i += 1
    while len(out) < n:
        out.append(pts[-1])
    return out[:n]


def oracle_target_vote(
    path: Sequence[Point],
    target_map: TargetMap,
    granularity: Granularity,
    resample_n: int = 64,
) -> Optional[str]:
    """Exhaustive point-in-rect voting with the documented tie-break chain."""
    if not path:
        return None
    points = _oracle_resample(path, resample_n)
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    scores = []
    for region in target_map.regions:
        if region.granularity is not granularity:
            continue
        votes = 0
        for px, py in points:
            r = region.rect
            if r.x <= px <= r.x + r.w and r.y <= py <= r.y + r.h:
                votes += 1
        if votes > 0:
            r = region.rect
            holds_centroid = r.x <= cx <= r.x + r.w and r.y <= cy <= r.y + r.h
            scores.append((-votes, 0 if holds_centroid else 1, r.area, region.id))
    if not scores:
        return None
    scores.sort()
    winner_id = scores[0][3]
    winner = target_map.by_id(winner_id)
    if granularity is Granularity.WORD and winner.parent_id is not None:
        pr = target_map.by_id(winner.parent_id).rect
        if not (pr.x <= cx <= pr.x + pr.w and pr.y <= cy <= pr.y + pr.h):
            return None
    return winner_id
