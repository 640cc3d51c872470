"""Eager wiggle recognizer: an event-stream state machine over pointer samples.

The engine consumes one PointerSample at a time plus a TargetMap snapshot and
returns the recognition events that sample triggered. It never consults the
wall clock; idle expiry is driven by sample timestamps (and by explicit tick
calls from a live host). Identical (config, map, sample stream) inputs always
produce the identical event stream.

Desktop mode watches horizontal motion from a hovering mouse; mobile mode
watches vertical scroll motion from a touch contact. Back-and-forth strokes
are accumulated as direction segments; when the reversal count first reaches
the activation threshold and a target region lies under the recent path, the
gesture activates. A trailing long displacement becomes an extension swipe
that encodes a valence rating (horizontal) or a topic priority (vertical,
desktop only). Motion then stopping, or the finger lifting, commits.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .errors import FormatError, WigglekitError
from .events import (
    Aborted,
    Activated,
    Committed,
    Encoding,
    ExtensionUpdated,
    PassThrough,
    Priority,
    PriorityLevel,
    RecognitionEvent,
    SwipeDirection,
    TrackingProgress,
    Valence,
)
from .geometry import (
    Axis,
    DirectionSegment,
    Point,
    PointerKind,
    PointerSample,
    SamplePhase,
    _merged_segments,
    extent_of_segments,
    path_centroid,
)
from .targets import Granularity, TargetMap, Viewport, acquire_target, target_under_point


class Mode(Enum):
    DESKTOP = "desktop"
    MOBILE = "mobile"

    @property
    def axis(self) -> Axis:
        return Axis.HORIZONTAL if self is Mode.DESKTOP else Axis.VERTICAL


class SampleOrderError(WigglekitError, ValueError):
    """A sample's timestamp ran backwards."""


class MultiBlockUnsupportedError(WigglekitError):
    """Multi-region chaining was requested in mobile mode."""


class PhaseError(WigglekitError):
    """An operation was called in a phase that does not allow it."""


class Phase(Enum):
    IDLE = "idle"
    TRACKING = "tracking"
    ACTIVATED = "activated"
    EXTENDING = "extending"
    COMMITTED = "committed"
    ABORTED = "aborted"


_CONFIG_KEYS = (
    "activation_reversals",
    "word_extent_px",
    "jitter_eps_px",
    "idle_timeout_ms",
    "swipe_min_px",
    "edge_fraction",
    "resample_n",
)


@dataclass(frozen=True)
class EngineConfig:
    mode: Mode = Mode.DESKTOP
    activation_reversals: int = 5
    word_extent_px: float = 65.0
    jitter_eps_px: float = 2.0
    idle_timeout_ms: int = 150
    swipe_min_px: float = 80.0
    edge_fraction: float = 0.9
    resample_n: int = 64
    viewport: Viewport = Viewport(1280.0, 800.0)

    def __post_init__(self) -> None:
        if self.activation_reversals < 1:
            raise ValueError("activation_reversals must be >= 1")
        if self.word_extent_px <= 0:
            raise ValueError("word_extent_px must be positive")
        if self.jitter_eps_px < 0:
            raise ValueError("jitter_eps_px must be non-negative")
        if self.idle_timeout_ms <= 0:
            raise ValueError("idle_timeout_ms must be positive")
        if self.swipe_min_px <= 0:
            raise ValueError("swipe_min_px must be positive")
        if not 0 < self.edge_fraction <= 1:
            raise ValueError("edge_fraction must be in (0, 1]")
        if self.resample_n < 2:
            raise ValueError("resample_n must be >= 2")
        if self.viewport.w <= 0 or self.viewport.h <= 0:
            raise ValueError("viewport dimensions must be positive")

    @property
    def axis(self) -> Axis:
        return self.mode.axis

    def to_json_dict(self) -> dict:
        data = {key: getattr(self, key) for key in _CONFIG_KEYS}
        data["mode"] = self.mode.value
        data["viewport"] = {"w": self.viewport.w, "h": self.viewport.h}
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "EngineConfig":
        known = set(_CONFIG_KEYS) | {"mode", "viewport"}
        unknown = set(data) - known
        if unknown:
            raise FormatError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}
        try:
            for key in _CONFIG_KEYS:
                if key in data:
                    kwargs[key] = data[key]
            if "mode" in data:
                kwargs["mode"] = Mode(data["mode"])
            if "viewport" in data:
                vp = data["viewport"]
                kwargs["viewport"] = Viewport(float(vp["w"]), float(vp["h"]))
            return cls(**kwargs)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed engine config: {exc}") from exc


def load_config(path: str | Path) -> EngineConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"config {path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"config {path}: expected a JSON object")
    return EngineConfig.from_json_dict(data)


def classify_granularity(
    extent_px: float, mode: Mode, word_extent_px: float = 65.0
) -> Granularity:
    """Word targets for tight wiggles, blocks otherwise; mobile is block-only.

    The boundary value itself classifies as block: a mean stroke amplitude
    of exactly word_extent_px is no longer a word-sized motion.
    """
    if mode is Mode.MOBILE:
        return Granularity.BLOCK
    return Granularity.WORD if extent_px < word_extent_px else Granularity.BLOCK


@dataclass(frozen=True, slots=True)
class SwipeClassification:
    direction: SwipeDirection
    fraction_of_available: float


def _classify_displacement(
    dx: float, dy: float, mode: Mode, swipe_min_px: float
) -> Optional[SwipeDirection]:
    adx, ady = abs(dx), abs(dy)
    if mode is Mode.MOBILE:
        # scroll extends the page vertically; only horizontal swipes encode
        if adx >= swipe_min_px and adx >= 2 * ady:
            return SwipeDirection.RIGHT if dx > 0 else SwipeDirection.LEFT
        return None
    if adx >= ady:
        if adx >= swipe_min_px and adx >= 2 * ady:
            return SwipeDirection.RIGHT if dx > 0 else SwipeDirection.LEFT
    else:
        if ady >= swipe_min_px and ady >= 2 * adx:
            return SwipeDirection.DOWN if dy > 0 else SwipeDirection.UP
    return None


def _available_px(direction: SwipeDirection, center: Point, viewport: Viewport) -> float:
    if direction is SwipeDirection.RIGHT:
        return viewport.w - center[0]
    if direction is SwipeDirection.LEFT:
        return center[0]
    if direction is SwipeDirection.DOWN:
        return viewport.h - center[1]
    return center[1]


def classify_extension(
    post_activation_samples: Sequence[PointerSample],
    wiggle_center: Point,
    viewport: Viewport,
    mode: Mode,
    swipe_min_px: float = 80.0,
) -> Optional[SwipeClassification]:
    """Classify the net displacement from the wiggle center as a swipe.

    Requires the displacement to reach swipe_min_px along one axis with that
    axis at least twice the other; anything ambiguous is no swipe. The
    fraction is displacement over the room available from the center to the
    viewport edge in the swipe direction, clamped to [0, 1].
    """
    if not post_activation_samples:
        return None
    last = post_activation_samples[-1]
    return classify_extension_point(
        (last.x, last.y), wiggle_center, viewport, mode, swipe_min_px
    )


def classify_extension_point(
    pos: Point,
    wiggle_center: Point,
    viewport: Viewport,
    mode: Mode,
    swipe_min_px: float = 80.0,
) -> Optional[SwipeClassification]:
    dx = pos[0] - wiggle_center[0]
    dy = pos[1] - wiggle_center[1]
    direction = _classify_displacement(dx, dy, mode, swipe_min_px)
    if direction is None:
        return None
    available = _available_px(direction, wiggle_center, viewport)
    displacement = abs(dx) if direction.horizontal else abs(dy)
    if available <= 0:
        fraction = 1.0
    else:
        fraction = min(1.0, displacement / available)
    return SwipeClassification(direction, fraction)


def compute_valence(direction: SwipeDirection, fraction: float) -> int:
    """Map a horizontal swipe to a rating: right positive, left negative.

    The magnitude is fraction * 10 rounded half away from zero.
    """
    if not direction.horizontal:
        raise ValueError("valence comes from horizontal swipes only")
    if fraction < 0:
        raise ValueError("fraction must be non-negative")
    magnitude = min(10, math.floor(fraction * 10 + 0.5))
    return magnitude if direction is SwipeDirection.RIGHT else -magnitude


def priority_from_swipe(
    direction: SwipeDirection, fraction: float, edge_fraction: float = 0.9
) -> PriorityLevel:
    """Map a vertical swipe to a priority; reaching the edge escalates it."""
    if direction.horizontal:
        raise ValueError("priority comes from vertical swipes only")
    if direction is SwipeDirection.UP:
        return PriorityLevel.URGENT if fraction >= edge_fraction else PriorityLevel.HIGH
    return PriorityLevel.LOW if fraction >= edge_fraction else PriorityLevel.NORMAL


def encoding_from_extension(
    extension: Optional[SwipeClassification], edge_fraction: float
) -> Encoding:
    if extension is None:
        return None
    if extension.direction.horizontal:
        return Valence(compute_valence(extension.direction, extension.fraction_of_available))
    return Priority(
        priority_from_swipe(extension.direction, extension.fraction_of_available, edge_fraction)
    )


class _Accumulation:
    """Incremental direction-segment tracker for one reversal accumulation.

    Mirrors geometry.direction_segments exactly: raw runs are updated one
    delta at a time and the jitter filter/merge reuses the same helper, so a
    prefix fed sample-by-sample always agrees with a batch recount.
    """

    __slots__ = (
        "values",
        "points",
        "runs",
        "sum_x",
        "sum_y",
        "last_count",
        "last_candidate",
        "last_granularity",
        "threshold_fired",
    )

    def __init__(self) -> None:
        self.values: List[float] = []
        self.points: List[Point] = []
        self.runs: List[List] = []
        self.sum_x = 0.0
        self.sum_y = 0.0
        self.last_count = 0
        self.last_candidate: Optional[str] = None
        self.last_granularity: Optional[Granularity] = None
        self.threshold_fired = False

    def push(self, sample: PointerSample, axis: Axis) -> None:
        value = axis.value_of(sample.x, sample.y)
        self.points.append((sample.x, sample.y))
        self.sum_x += sample.x
        self.sum_y += sample.y
        self.values.append(value)
        if len(self.values) < 2:
            return
        i = len(self.values) - 2
        d = value - self.values[i]
        if d == 0:
            if self.runs:
                self.runs[-1][2] = i + 1
            return
        sign = 1 if d > 0 else -1
        if self.runs and self.runs[-1][0] == sign:
            self.runs[-1][2] = i + 1
        else:
            self.runs.append([sign, i, i + 1])

    def segments(self, jitter_eps: float) -> List[DirectionSegment]:
        return _merged_segments(self.values, self.runs, jitter_eps)

    def center(self) -> Point:
        n = len(self.points)
        return (self.sum_x / n, self.sum_y / n)


@dataclass(frozen=True)
class RecognizerState:
    """Read-only snapshot of the engine for hosts and tests."""

    phase: Phase
    reversal_count: int
    wiggle_center: Optional[Point]
    segment_history: Tuple[DirectionSegment, ...]
    candidate_target: Optional[str]
    pending_granularity: Optional[Granularity]
    pending_target_ids: Tuple[str, ...]


class WiggleEngine:
    def __init__(self, config: EngineConfig) -> None:
        self.config = config
        self._axis = config.mode.axis
        self._sample_index = 0
        self._last_t: Optional[int] = None
        self.clamped_samples = 0
        self.warnings: List[str] = []
        self._warned: set = set()
        self._phase = Phase.IDLE
        self._acc: Optional[_Accumulation] = None
        self._pending: List[str] = []
        self._pending_granularity: Optional[Granularity] = None
        self._wiggle_center: Optional[Point] = None
        self._extension: Optional[SwipeClassification] = None
        self._button_held = False
        self._touch_down = False
        self._touch_target: Optional[str] = None
        self._suppress_until_lift = False

    # -- public surface -----------------------------------------------------

    @property
    def phase(self) -> Phase:
        return self._phase

    def state(self) -> RecognizerState:
        segments: Tuple[DirectionSegment, ...] = ()
        count = 0
        candidate = self._touch_target if self.config.mode is Mode.MOBILE else None
        center = self._wiggle_center
        if self._acc is not None:
            segments = tuple(self._acc.segments(self.config.jitter_eps_px))
            count = max(0, len(segments) - 1)
            if self.config.mode is Mode.DESKTOP:
                candidate = self._acc.last_candidate
            if center is None and self._acc.points:
                center = self._acc.center()
        return RecognizerState(
            phase=self._phase,
            reversal_count=count,
            wiggle_center=center if self._phase is not Phase.IDLE else None,
            segment_history=segments,
            candidate_target=candidate,
            pending_granularity=self._pending_granularity,
            pending_target_ids=tuple(self._pending),
        )

    def reset(self) -> None:
        """Drop all gesture and contact state; next sample starts fresh."""
        self._clear_episode()
        self._button_held = False
        self._touch_down = False
        self._touch_target = None
        self._suppress_until_lift = False

    def feed(self, sample: PointerSample, target_map: TargetMap) -> List[RecognitionEvent]:
        """Consume one sample, return every event it triggered (in order)."""
        if self._last_t is not None and sample.t < self._last_t:
            raise SampleOrderError(
                f"sample at t={sample.t} arrived after t={self._last_t}"
            )
        self._check_kind(sample)
        events: List[RecognitionEvent] = []
        if (
            self._phase is not Phase.IDLE
            and self._last_t is not None
            and sample.t - self._last_t >= self.config.idle_timeout_ms
        ):
            closing = self._close_idle(self._sample_index - 1)
            if closing is not None:
                events.append(closing)
        index = self._sample_index
        self._sample_index += 1
        self._last_t = sample.t
        sample = self._clamped(sample)
        if self.config.mode is Mode.DESKTOP:
            events.extend(self._feed_desktop(sample, index, target_map))
        else:
            events.extend(self._feed_mobile(sample, index, target_map))
        return events

    def tick(self, now_ms: int) -> Optional[RecognitionEvent]:
        """Advance virtual time without a sample; may close the episode."""
        if self._phase is Phase.IDLE or self._last_t is None:
            return None
        if now_ms - self._last_t >= self.config.idle_timeout_ms:
            return self._close_idle(self._sample_index - 1)
        return None

    def continue_multi_block(
        self, sample: PointerSample, target_map: TargetMap
    ) -> List[RecognitionEvent]:
        """Feed a post-activation sample that may chain another region.

        Desktop only; this is the same path feed() takes once a collection
        is pending, exposed for hosts that drive chaining explicitly.
        """
        if self.config.mode is Mode.MOBILE:
            raise MultiBlockUnsupportedError(
                "multi-region chaining is not supported in mobile mode"
            )
        if self._phase not in (Phase.ACTIVATED, Phase.EXTENDING):
            raise PhaseError("no pending collection to extend")
        return self.feed(sample, target_map)

    # -- shared internals ----------------------------------------------------

    def _check_kind(self, sample: PointerSample) -> None:
        mismatch = (
            self.config.mode is Mode.MOBILE and sample.kind is PointerKind.MOUSE
        ) or (self.config.mode is Mode.DESKTOP and sample.kind is PointerKind.TOUCH)
        if mismatch and "kind-mismatch" not in self._warned:
            self._warned.add("kind-mismatch")
            self.warnings.append(
                f"{sample.kind.value} samples fed to a {self.config.mode.value} engine"
            )

    def _clamped(self, sample: PointerSample) -> PointerSample:
        x, y = self.config.viewport.clamp(sample.x, sample.y)
        if x == sample.x and y == sample.y:
            return sample
        self.clamped_samples += 1
        return replace(sample, x=x, y=y)

    def _clear_episode(self) -> None:
        self._phase = Phase.IDLE
        self._acc = None
        self._pending = []
        self._pending_granularity = None
        self._wiggle_center = None
        self._extension = None

    def _close_idle(self, index: int) -> Optional[RecognitionEvent]:
        if self._phase is Phase.TRACKING:
            self._phase = Phase.ABORTED
            self._clear_episode()
            return Aborted(index, "idle")
        if self._phase in (Phase.ACTIVATED, Phase.EXTENDING):
            return self._commit(index)
        return None

    def _commit(self, index: int) -> Committed:
        encoding = encoding_from_extension(self._extension, self.config.edge_fraction)
        event = Committed(index, tuple(self._pending), encoding)
        self._phase = Phase.COMMITTED
        self._clear_episode()
        return event

    def _gesture_path(
        self, acc: _Accumulation, segments: Sequence[DirectionSegment]
    ) -> List[Point]:
        """Points of the strokes that produced the recent reversals.

        Once more segments exist than the activation threshold needs, the
        oldest involved one is an entry stroke (a glide into the gesture, or
        the approach from a previously collected region) and is dropped, so
        neither the vote path nor the swipe origin is dragged toward where
        the pointer came from.
        """
        k = self.config.activation_reversals
        tail = segments[-k:] if len(segments) > k else list(segments)
        return acc.points[tail[0].start :]

    def _acquire(
        self, acc: _Accumulation, segments: Sequence[DirectionSegment], target_map: TargetMap
    ) -> Tuple[Optional[str], Granularity, Point]:
        """Resolve the region under the recent strokes at the motion's scale.

        Only completed strokes feed the extent estimate; the segment opened
        by the newest delta would drag the mean toward zero. A word-scale
        motion with no word region under it falls back to block scale so
        block-only pages still collect.
        """
        cfg = self.config
        window_k = cfg.activation_reversals
        completed = segments[:-1] if len(segments) > 1 else list(segments)
        window = completed[-window_k:]
        if not window:
            center = acc.center() if acc.points else (0.0, 0.0)
            return None, classify_granularity(0.0, cfg.mode, cfg.word_extent_px), center
        extent = extent_of_segments(window, window_k)
        granularity = classify_granularity(extent.mean_px, cfg.mode, cfg.word_extent_px)
        path = self._gesture_path(acc, segments)
        center = path_centroid(path)
        target = acquire_target(path, target_map, granularity, cfg.resample_n)
        if target is None and granularity is Granularity.WORD:
            fallback = acquire_target(path, target_map, Granularity.BLOCK, cfg.resample_n)
            if fallback is not None:
                return fallback, Granularity.BLOCK, center
        return target, granularity, center

    def _lock_target(
        self,
        index: int,
        target: str,
        granularity: Granularity,
        center: Point,
        sample: PointerSample,
        events: List[RecognitionEvent],
    ) -> None:
        self._pending.append(target)
        self._pending_granularity = granularity
        self._wiggle_center = center
        self._extension = None
        self._phase = Phase.ACTIVATED
        events.append(Activated(index, target, granularity, center))
        acc = _Accumulation()
        acc.push(sample, self._axis)
        self._acc = acc

    def _restart_accumulation(self, sample: PointerSample) -> None:
        acc = _Accumulation()
        acc.push(sample, self._axis)
        self._acc = acc

    def _update_extension(
        self, sample: PointerSample, index: int, events: List[RecognitionEvent]
    ) -> None:
        assert self._wiggle_center is not None
        swipe = classify_extension_point(
            (sample.x, sample.y),
            self._wiggle_center,
            self.config.viewport,
            self.config.mode,
            self.config.swipe_min_px,
        )
        if swipe == self._extension:
            return
        self._extension = swipe
        if swipe is None:
            self._phase = Phase.ACTIVATED
        else:
            self._phase = Phase.EXTENDING
            events.append(ExtensionUpdated(index, swipe.direction, swipe.fraction_of_available))

    # -- desktop -------------------------------------------------------------

    def _feed_desktop(
        self, sample: PointerSample, index: int, target_map: TargetMap
    ) -> List[RecognitionEvent]:
        events: List[RecognitionEvent] = []
        if sample.phase is SamplePhase.CONTACT_START:
            # wiggling is a hover gesture; a pressed button hands the motion
            # back to ordinary interactions like text selection
            if self._phase is Phase.TRACKING:
                events.append(Aborted(index, "contact"))
                self._phase = Phase.ABORTED
                self._clear_episode()
            elif self._phase in (Phase.ACTIVATED, Phase.EXTENDING):
                events.append(self._commit(index))
            self._button_held = True
            events.append(PassThrough(index))
            return events
        if sample.phase is SamplePhase.CONTACT_END:
            self._button_held = False
            events.append(PassThrough(index))
            return events
        if self._button_held:
            events.append(PassThrough(index))
            return events
        if self._phase is Phase.IDLE:
            self._phase = Phase.TRACKING
            self._acc = _Accumulation()
        if self._phase is Phase.TRACKING:
            self._advance_tracking(sample, index, target_map, events, chaining=False)
            events.append(PassThrough(index))
        else:
            self._advance_tracking(sample, index, target_map, events, chaining=True)
            if self._phase in (Phase.ACTIVATED, Phase.EXTENDING):
                self._update_extension(sample, index, events)
        return events

    def _advance_tracking(
        self,
        sample: PointerSample,
        index: int,
        target_map: TargetMap,
        events: List[RecognitionEvent],
        chaining: bool,
    ) -> None:
        acc = self._acc
        assert acc is not None
        acc.push(sample, self._axis)
        cfg = self.config
        segments = acc.segments(cfg.jitter_eps_px)
        count = max(0, len(segments) - 1)
        if not acc.threshold_fired and count >= cfg.activation_reversals:
            acc.threshold_fired = True
            target, granularity, center = self._acquire(acc, segments, target_map)
            if target is None:
                # nothing under the gesture: quietly start a fresh
                # accumulation so drifting onto content can still activate
                self._restart_accumulation(sample)
                return
            if not chaining:
                self._lock_target(index, target, granularity, center, sample, events)
            elif target != self._pending[-1]:
                self._lock_target(index, target, granularity, center, sample, events)
            else:
                self._restart_accumulation(sample)
            return
        # progress reports only serve pre-activation feedback; a pending
        # collection keeps quiet until another region actually locks
        if not chaining and count != acc.last_count and count >= 1:
            target, granularity, _ = self._acquire(acc, segments, target_map)
            acc.last_candidate = target
            acc.last_granularity = granularity
            if target is not None:
                events.append(TrackingProgress(index, count, target, granularity))
        acc.last_count = count

    # -- mobile ---------------------------------------------------------------

    def _feed_mobile(
        self, sample: PointerSample, index: int, target_map: TargetMap
    ) -> List[RecognitionEvent]:
        events: List[RecognitionEvent] = []
        if sample.phase is SamplePhase.CONTACT_START:
            self._touch_down = True
            self._touch_target = target_under_point((sample.x, sample.y), target_map)
            self._phase = Phase.TRACKING
            acc = _Accumulation()
            acc.push(sample, self._axis)
            self._acc = acc
            events.append(PassThrough(index))
            return events
        if sample.phase is SamplePhase.CONTACT_END:
            suppressed = self._suppress_until_lift
            if self._phase in (Phase.ACTIVATED, Phase.EXTENDING):
                events.append(self._commit(index))
            elif self._phase is Phase.TRACKING:
                events.append(Aborted(index, "contact-end"))
                self._phase = Phase.ABORTED
                self._clear_episode()
                if not suppressed:
                    events.append(PassThrough(index))
            elif not suppressed:
                events.append(PassThrough(index))
            self._touch_down = False
            self._touch_target = None
            self._suppress_until_lift = False
            return events
        # move
        if not self._touch_down:
            events.append(PassThrough(index))
            return events
        if self._phase is Phase.IDLE:
            # same contact, new episode (a long pause committed mid-touch)
            self._phase = Phase.TRACKING
            acc = _Accumulation()
            acc.push(sample, self._axis)
            self._acc = acc
        if self._phase is Phase.TRACKING:
            self._advance_mobile(sample, index, events)
            if not self._suppress_until_lift:
                events.append(PassThrough(index))
        elif self._phase in (Phase.ACTIVATED, Phase.EXTENDING):
            self._update_extension(sample, index, events)
        return events

    def _advance_mobile(
        self, sample: PointerSample, index: int, events: List[RecognitionEvent]
    ) -> None:
        acc = self._acc
        assert acc is not None
        acc.push(sample, self._axis)
        cfg = self.config
        segments = acc.segments(cfg.jitter_eps_px)
        count = max(0, len(segments) - 1)
        if not acc.threshold_fired and count >= cfg.activation_reversals:
            acc.threshold_fired = True
            if self._touch_target is None:
                self._restart_accumulation(sample)
                return
            center = path_centroid(self._gesture_path(acc, segments))
            self._suppress_until_lift = True
            self._lock_target(
                index, self._touch_target, Granularity.BLOCK, center, sample, events
            )
            return
        if count != acc.last_count and count >= 1 and self._touch_target is not None:
            events.append(TrackingProgress(index, count, self._touch_target, Granularity.BLOCK))
        acc.last_count = count
