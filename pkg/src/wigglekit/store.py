"""Triage store: clips, topics, the holding tank, and single-step undo.

Collected clips land either in the last topic the user picked or in the
holding tank. Vertical-swipe commits create a topic directly, titled by the
collected text. Queries filter by auto-generated facets (rating sign plus
provenance domains), sort, and split off a below-focus group that can be
trashed in one step. Every mutating operation snapshots the store first;
undo restores the snapshot until the next mutation or until ten seconds of
(virtual) time pass.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import FormatError, WigglekitError
from .events import Encoding, Priority, PriorityLevel, Valence

UNDO_WINDOW_MS = 10_000

FILTER_POSITIVE = "positive-rating"
FILTER_NEGATIVE = "negative-rating"


class NoPendingUndoError(WigglekitError):
    """Nothing to undo: no mutation yet, already undone, or window expired."""


class UnknownIdError(WigglekitError, KeyError):
    pass


class ClipState(Enum):
    ACTIVE = "active"
    TRASHED = "trashed"
    ARCHIVED = "archived"


class SortKey(Enum):
    VALENCE_DESC = "valenceDesc"
    TEMPORAL = "temporal"


ClipPart = Tuple[str, str]  # (region id, captured text)


@dataclass
class Clip:
    id: str
    parts: Tuple[ClipPart, ...]
    valence: Optional[int]
    topic_id: Optional[str]
    provenance: str
    created_at: int
    notes: str = ""
    state: ClipState = ClipState.ACTIVE

    @property
    def text(self) -> str:
        return " ".join(text for _, text in self.parts).strip()


@dataclass
class Topic:
    id: str
    title: str
    priority: PriorityLevel
    clip_ids: List[str] = field(default_factory=list)
    created_at: int = 0


@dataclass(frozen=True)
class TankQuery:
    enabled_filters: frozenset = frozenset()
    sort_key: SortKey = SortKey.VALENCE_DESC
    focus_threshold: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.focus_threshold <= 10:
            raise ValueError("focus_threshold must be in [0, 10]")


@dataclass(frozen=True)
class QueryResult:
    main: Tuple[Clip, ...]
    below_focus: Tuple[Clip, ...]


def clip_to_wire(c: Clip) -> dict:
    return {
        "id": c.id,
        "parts": [[r, t] for r, t in c.parts],
        "valence": c.valence,
        "topicId": c.topic_id,
        "provenance": c.provenance,
        "createdAt": c.created_at,
        "notes": c.notes,
        "state": c.state.value,
    }


def topic_to_wire(t: Topic) -> dict:
    return {
        "id": t.id,
        "title": t.title,
        "priority": t.priority.value,
        "clipIds": list(t.clip_ids),
        "createdAt": t.created_at,
    }


def _sort_clips(clips: List[Clip], sort_key: SortKey) -> List[Clip]:
    if sort_key is SortKey.VALENCE_DESC:
        # unrated clips sort as neutral; ties resolve oldest-first
        return sorted(
            clips,
            key=lambda c: (-(c.valence if c.valence is not None else 0), c.created_at, c.id),
        )
    return sorted(clips, key=lambda c: (-c.created_at, c.id))


_ID_PATTERN = re.compile(r"^[ct](\d+)$")


class TriageStore:
    def __init__(self) -> None:
        self._clips: Dict[str, Clip] = {}
        self._topics: Dict[str, Topic] = {}
        self._next_clip = 1
        self._next_topic = 1
        self.last_picked_topic: Optional[str] = None
        self._last_now = 0
        self._undo: Optional[Tuple[str, Optional[str], int]] = None

    # -- lookups --------------------------------------------------------------

    def clip(self, clip_id: str) -> Clip:
        try:
            return self._clips[clip_id]
        except KeyError:
            raise UnknownIdError(f"no clip {clip_id!r}") from None

    def topic(self, topic_id: str) -> Topic:
        try:
            return self._topics[topic_id]
        except KeyError:
            raise UnknownIdError(f"no topic {topic_id!r}") from None

    def clips(self) -> List[Clip]:
        return list(self._clips.values())

    def topics(self) -> List[Topic]:
        return list(self._topics.values())

    def available_filters(self) -> frozenset:
        """Auto-generated facets: rating signs present plus source domains."""
        filters = set()
        for clip in self._clips.values():
            if clip.state is not ClipState.ACTIVE:
                continue
            if clip.valence is not None and clip.valence > 0:
                filters.add(FILTER_POSITIVE)
            if clip.valence is not None and clip.valence < 0:
                filters.add(FILTER_NEGATIVE)
            if clip.provenance:
                filters.add(clip.provenance)
        return frozenset(filters)

    # -- undo machinery ---------------------------------------------------------

    def _effective_now(self, now: Optional[int]) -> int:
        if now is not None:
            self._last_now = now
            return now
        return self._last_now

    def _begin_mutation(self, now: Optional[int]) -> int:
        stamp = self._effective_now(now)
        self._undo = (self._dump_json(), self.last_picked_topic, stamp + UNDO_WINDOW_MS)
        return stamp

    def undo_last(self, now: int) -> None:
        """Restore the state before the latest mutation, inside the window."""
        if self._undo is None:
            raise NoPendingUndoError("no mutation to undo")
        payload, last_picked, deadline = self._undo
        if now > deadline:
            self._undo = None
            raise NoPendingUndoError("undo window expired")
        self._load_json(payload)
        self.last_picked_topic = last_picked
        self._undo = None

    # -- mutations ----------------------------------------------------------------

    def add_clip(
        self,
        parts: Sequence[ClipPart],
        encoding: Encoding,
        provenance: str,
        now: int,
    ) -> str:
        """Apply a commit: file a clip, or spin up a topic for priority swipes.

        Returns the id of whatever was created (clip, or topic when the
        encoding is a priority).
        """
        if not parts:
            raise ValueError("a clip needs at least one part")
        self._begin_mutation(now)
        if isinstance(encoding, Priority):
            return self._create_topic(parts, encoding.level, now)
        valence = encoding.score if isinstance(encoding, Valence) else None
        clip_id = f"c{self._next_clip}"
        self._next_clip += 1
        topic_id = None
        if self.last_picked_topic is not None and self.last_picked_topic in self._topics:
            topic_id = self.last_picked_topic
        clip = Clip(
            id=clip_id,
            parts=tuple((str(r), str(t)) for r, t in parts),
            valence=valence,
            topic_id=topic_id,
            provenance=provenance,
            created_at=now,
        )
        self._clips[clip_id] = clip
        if topic_id is not None:
            self._topics[topic_id].clip_ids.append(clip_id)
        return clip_id

    def create_topic_from_clip(
        self, parts: Sequence[ClipPart], level: PriorityLevel, now: int
    ) -> str:
        """The collected text becomes the title of a fresh topic; no clip."""
        if not parts:
            raise ValueError("a topic needs at least one part")
        self._begin_mutation(now)
        return self._create_topic(parts, level, now)

    def _create_topic(
        self, parts: Sequence[ClipPart], level: PriorityLevel, now: int
    ) -> str:
        title = " ".join(text for _, text in parts).strip() or "(untitled)"
        topic_id = f"t{self._next_topic}"
        self._next_topic += 1
        self._topics[topic_id] = Topic(
            id=topic_id, title=title, priority=level, created_at=now
        )
        return topic_id

    def set_valence(self, clip_id: str, valence: Optional[int], now: Optional[int] = None) -> None:
        if valence is not None and not -10 <= valence <= 10:
            raise ValueError(f"valence out of range: {valence}")
        clip = self.clip(clip_id)
        self._begin_mutation(now)
        clip.valence = valence

    def set_notes(self, clip_id: str, notes: str, now: Optional[int] = None) -> None:
        clip = self.clip(clip_id)
        self._begin_mutation(now)
        clip.notes = notes

    def set_topic_priority(
        self, topic_id: str, level: PriorityLevel, now: Optional[int] = None
    ) -> None:
        topic = self.topic(topic_id)
        self._begin_mutation(now)
        topic.priority = level

    def assign_topic(self, clip_id: str, topic_id: str, now: Optional[int] = None) -> None:
        """Move a clip into a topic; remembers it as the last picked one."""
        clip = self.clip(clip_id)
        topic = self.topic(topic_id)
        self._begin_mutation(now)
        if clip.topic_id is not None and clip.topic_id in self._topics:
            old = self._topics[clip.topic_id]
            if clip.id in old.clip_ids:
                old.clip_ids.remove(clip.id)
        clip.topic_id = topic.id
        if clip.id not in topic.clip_ids:
            topic.clip_ids.append(clip.id)
        self.last_picked_topic = topic.id

    def batch_trash(self, query: TankQuery, now: Optional[int] = None) -> int:
        """Trash the below-focus group the query currently shows."""
        doomed = self.query_clips(query).below_focus
        self._begin_mutation(now)
        for clip in doomed:
            live = self._clips[clip.id]
            live.state = ClipState.TRASHED
            if live.topic_id is not None and live.topic_id in self._topics:
                ids = self._topics[live.topic_id].clip_ids
                if live.id in ids:
                    ids.remove(live.id)
        return len(doomed)

    # -- queries -------------------------------------------------------------------

    def query_clips(self, query: TankQuery) -> QueryResult:
        """Filter, sort, and split active clips around the focus threshold.

        With no filters enabled everything passes. Clips without a rating
        count as above-threshold so unrated evidence is never auto-hidden.
        """
        passing = []
        for clip in self._clips.values():
            if clip.state is not ClipState.ACTIVE:
                continue
            if self._matches(clip, query.enabled_filters):
                passing.append(clip)
        above = [
            c
            for c in passing
            if c.valence is None or abs(c.valence) >= query.focus_threshold
        ]
        below = [
            c
            for c in passing
            if c.valence is not None and abs(c.valence) < query.focus_threshold
        ]
        return QueryResult(
            main=tuple(_sort_clips(above, query.sort_key)),
            below_focus=tuple(_sort_clips(below, query.sort_key)),
        )

    @staticmethod
    def _matches(clip: Clip, enabled: frozenset) -> bool:
        if not enabled:
            return True
        for name in enabled:
            if name == FILTER_POSITIVE:
                if clip.valence is not None and clip.valence > 0:
                    return True
            elif name == FILTER_NEGATIVE:
                if clip.valence is not None and clip.valence < 0:
                    return True
            elif clip.provenance == name:
                return True
        return False

    def sort_topics(self) -> List[Topic]:
        """Urgent first, then high/normal/low; ties keep creation order."""
        return sorted(
            self._topics.values(), key=lambda t: (t.priority.rank, t.created_at, t.id)
        )

    # -- serialization ----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "version": 1,
            "clips": [
                clip_to_wire(c)
                for c in self._clips.values()
                if c.state is not ClipState.TRASHED
            ],
            "topics": [topic_to_wire(t) for t in self._topics.values()],
            "trash": [
                clip_to_wire(c) for c in self._clips.values() if c.state is ClipState.TRASHED
            ],
        }

    def _dump_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False, indent=2) + "\n"

    def _load_json(self, payload: str) -> None:
        data = json.loads(payload)
        self._replace_from_dict(data)

    def _replace_from_dict(self, data: dict) -> None:
        try:
            if data.get("version") != 1:
                raise FormatError(f"unsupported store version: {data.get('version')!r}")
            clips: Dict[str, Clip] = {}
            for raw in list(data["clips"]) + list(data["trash"]):
                clip = Clip(
                    id=str(raw["id"]),
                    parts=tuple((str(r), str(t)) for r, t in raw["parts"]),
                    valence=raw["valence"],
                    topic_id=raw["topicId"],
                    provenance=str(raw["provenance"]),
                    created_at=int(raw["createdAt"]),
                    notes=str(raw.get("notes", "")),
                    state=ClipState(raw.get("state", "active")),
                )
                if clip.valence is not None and not -10 <= int(clip.valence) <= 10:
                    raise FormatError(f"clip {clip.id}: valence out of range")
                clips[clip.id] = clip
            topics: Dict[str, Topic] = {}
            for raw in data["topics"]:
                topic = Topic(
                    id=str(raw["id"]),
                    title=str(raw["title"]),
                    priority=PriorityLevel(raw["priority"]),
                    clip_ids=[str(c) for c in raw["clipIds"]],
                    created_at=int(raw.get("createdAt", 0)),
                )
                topics[topic.id] = topic
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed store file: {exc}") from exc
        self._clips = clips
        self._topics = topics
        self._next_clip = _next_counter(clips.keys())
        self._next_topic = _next_counter(topics.keys())

    @classmethod
    def from_json_dict(cls, data: dict) -> "TriageStore":
        store = cls()
        store._replace_from_dict(data)
        return store

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self._dump_json())

    @classmethod
    def load(cls, path: str | Path) -> "TriageStore":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"store {path}: invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    # -- export ------------------------------------------------------------------------

    def export_topic_markdown(self, topic_id: str) -> str:
        """Plain markdown digest of one topic, ratings shown as thumb marks."""
        topic = self.topic(topic_id)
        lines = [f"# {topic.title}", "", f"Priority: {topic.priority.value}", ""]
        for clip_id in topic.clip_ids:
            clip = self.clip(clip_id)
            if clip.valence is None:
                lines.append(f"- {clip.text}")
            elif clip.valence > 0:
                lines.append(f"- \U0001F44D (+{clip.valence}) {clip.text}")
            elif clip.valence < 0:
                lines.append(f"- \U0001F44E ({clip.valence}) {clip.text}")
            else:
                lines.append(f"- (0) {clip.text}")
        return "\n".join(lines) + "\n"


def _next_counter(ids) -> int:
    highest = 0
    for raw in ids:
        m = _ID_PATTERN.match(raw)
        if m:
            highest = max(highest, int(m.group(1)))
    return highest + 1
