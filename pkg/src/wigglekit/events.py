"""Recognition events, commit encodings, and their JSON-lines wire format.

An event log is one JSON object per line: {"seq", "sampleIndex", "type",
"payload"}. seq is a global counter assigned by the log writer; sampleIndex
is the index of the last sample applied to the engine when the event was
produced. Logs are byte-stable for identical (config, map, trace) inputs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from .errors import FormatError
from .geometry import Point
from .targets import Granularity


class SwipeDirection(Enum):
    LEFT = "left"
    RIGHT = "right"
    UP = "up"
    DOWN = "down"

    @property
    def horizontal(self) -> bool:
        return self in (SwipeDirection.LEFT, SwipeDirection.RIGHT)


class PriorityLevel(Enum):
    LOW = "low"
    NORMAL = "normal"
    HIGH = "high"
    URGENT = "urgent"

    @property
    def rank(self) -> int:
        """Sort weight, most urgent first."""
        return {"urgent": 0, "high": 1, "normal": 2, "low": 3}[self.value]


@dataclass(frozen=True, slots=True)
class Valence:
    """Signed agreement rating in [-10, 10]; sign follows swipe direction."""

    score: int

    def __post_init__(self) -> None:
        if not -10 <= self.score <= 10:
            raise ValueError(f"valence score out of range: {self.score}")


@dataclass(frozen=True, slots=True)
class Priority:
    level: PriorityLevel


# None means the gesture committed without an extension swipe.
Encoding = Union[Valence, Priority, None]


@dataclass(frozen=True, slots=True)
class TrackingProgress:
    sample_index: int
    reversals: int
    candidate_target_id: Optional[str]
    granularity: Optional[Granularity]


@dataclass(frozen=True, slots=True)
class Aborted:
    sample_index: int
    reason: str


@dataclass(frozen=True, slots=True)
class Activated:
    sample_index: int
    target_id: str
    granularity: Granularity
    wiggle_center: Point


@dataclass(frozen=True, slots=True)
class ExtensionUpdated:
    sample_index: int
    direction: SwipeDirection
    fraction_of_available: float


@dataclass(frozen=True, slots=True)
class Committed:
    sample_index: int
    target_ids: Tuple[str, ...]
    encoding: Encoding


@dataclass(frozen=True, slots=True)
class PassThrough:
    sample_index: int


RecognitionEvent = Union[
    TrackingProgress, Aborted, Activated, ExtensionUpdated, Committed, PassThrough
]


def encoding_to_wire(encoding: Encoding) -> Optional[dict]:
    if encoding is None:
        return None
    if isinstance(encoding, Valence):
        return {"kind": "valence", "score": encoding.score}
    return {"kind": "priority", "level": encoding.level.value}


def encoding_from_wire(data: Optional[dict]) -> Encoding:
    if data is None:
        return None
    try:
        if data["kind"] == "valence":
            return Valence(int(data["score"]))
        if data["kind"] == "priority":
            return Priority(PriorityLevel(data["level"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed encoding: {data!r}") from exc
    raise FormatError(f"unknown encoding kind: {data!r}")


def _payload(event: RecognitionEvent) -> dict:
    if isinstance(event, TrackingProgress):
        return {
            "reversals": event.reversals,
            "candidateTargetId": event.candidate_target_id,
            "granularity": event.granularity.value if event.granularity else None,
        }
    if isinstance(event, Aborted):
        return {"reason": event.reason}
    if isinstance(event, Activated):
        return {
            "targetId": event.target_id,
            "granularity": event.granularity.value,
            "wiggleCenter": [event.wiggle_center[0], event.wiggle_center[1]],
        }
    if isinstance(event, ExtensionUpdated):
        return {
            "direction": event.direction.value,
            "fractionOfAvailable": event.fraction_of_available,
        }
    if isinstance(event, Committed):
        return {
            "targetIds": list(event.target_ids),
            "encoding": encoding_to_wire(event.encoding),
        }
    if isinstance(event, PassThrough):
        return {}
    raise TypeError(f"not a recognition event: {event!r}")


def event_to_wire(event: RecognitionEvent, seq: int) -> dict:
    return {
        "seq": seq,
        "sampleIndex": event.sample_index,
        "type": type(event).__name__,
        "payload": _payload(event),
    }


def event_from_wire(data: dict) -> RecognitionEvent:
    try:
        kind = data["type"]
        idx = int(data["sampleIndex"])
        payload = data["payload"]
        if kind == "TrackingProgress":
            candidate = payload["candidateTargetId"]
            granularity = payload["granularity"]
            return TrackingProgress(
                idx,
                int(payload["reversals"]),
                None if candidate is None else str(candidate),
                None if granularity is None else Granularity(granularity),
            )
        if kind == "Aborted":
            return Aborted(idx, str(payload["reason"]))
        if kind == "Activated":
            cx, cy = payload["wiggleCenter"]
            return Activated(
                idx,
                str(payload["targetId"]),
                Granularity(payload["granularity"]),
                (float(cx), float(cy)),
            )
        if kind == "ExtensionUpdated":
            return ExtensionUpdated(
                idx,
                SwipeDirection(payload["direction"]),
                float(payload["fractionOfAvailable"]),
            )
        if kind == "Committed":
            return Committed(
                idx,
                tuple(str(t) for t in payload["targetIds"]),
                encoding_from_wire(payload["encoding"]),
            )
        if kind == "PassThrough":
            return PassThrough(idx)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed event line: {data!r}") from exc
    raise FormatError(f"unknown event type: {kind!r}")


def event_line(event: RecognitionEvent, seq: int) -> str:
    """Serialize one event to its canonical log line (no trailing newline)."""
    wire = event_to_wire(event, seq)
    line = json.dumps(wire, separators=(",", ":"), allow_nan=False)
    return line


def parse_event_line(line: str) -> Tuple[int, RecognitionEvent]:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON event line: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("event line must be a JSON object")
    event = event_from_wire(data)
    try:
        seq = int(data["seq"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"event line missing seq: {data!r}") from exc
    return seq, event
