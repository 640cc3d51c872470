"""Target regions and path-vote target acquisition.

A TargetMap is a flat snapshot of collectible page regions (blocks and words)
in viewport coordinates. Acquisition resamples a pointer path and lets each
point vote for the regions that contain it; the densest region wins with a
deterministic tie-break chain.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import FormatError
from .geometry import Point, path_centroid, resample_path


class Granularity(Enum):
    WORD = "word"
    BLOCK = "block"


@dataclass(frozen=True, slots=True)
class Rect:
    """Axis-aligned rectangle, closed on all edges (boundary points count)."""

    x: float
    y: float
    w: float
    h: float

    def contains(self, p: Point) -> bool:
        return self.x <= p[0] <= self.x + self.w and self.y <= p[1] <= self.y + self.h

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x <= other.x
            and self.y <= other.y
            and other.x + other.w <= self.x + self.w
            and other.y + other.h <= self.y + self.h
        )

    def overlaps(self, other: "Rect") -> bool:
        # shared edges do not count as overlap
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )

    @property
    def area(self) -> float:
        return self.w * self.h


@dataclass(frozen=True, slots=True)
class TargetRegion:
    id: str
    rect: Rect
    granularity: Granularity
    text: str = ""
    source_url: str = ""
    parent_id: Optional[str] = None


@dataclass(frozen=True, slots=True)
class Viewport:
    w: float
    h: float

    def clamp(self, x: float, y: float) -> Point:
        return (min(max(x, 0.0), self.w), min(max(y, 0.0), self.h))

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.w and 0.0 <= y <= self.h


@dataclass(frozen=True)
class TargetMap:
    """Immutable snapshot of the collectible regions on a page.

    Construction validates structural integrity: positive viewport, unique
    ids, resolvable parents, word rects contained by their parent block, and
    no overlap between same-granularity rects.
    """

    regions: Tuple[TargetRegion, ...]
    viewport: Viewport
    _by_id: Dict[str, TargetRegion] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.viewport.w <= 0 or self.viewport.h <= 0:
            raise FormatError("viewport dimensions must be positive")
        by_id: Dict[str, TargetRegion] = {}
        for region in self.regions:
            if region.id in by_id:
                raise FormatError(f"duplicate region id {region.id!r}")
            by_id[region.id] = region
        for region in self.regions:
            if region.parent_id is None:
                continue
            parent = by_id.get(region.parent_id)
            if parent is None:
                raise FormatError(
                    f"region {region.id!r} references unknown parent {region.parent_id!r}"
                )
            if region.granularity is Granularity.WORD and not parent.rect.contains_rect(
                region.rect
            ):
                raise FormatError(
                    f"word region {region.id!r} escapes parent {region.parent_id!r}"
                )
        for granularity in Granularity:
            peers = [r for r in self.regions if r.granularity is granularity]
            for i, a in enumerate(peers):
                for b in peers[i + 1 :]:
                    if a.rect.overlaps(b.rect):
                        raise FormatError(
                            f"{granularity.value} regions {a.id!r} and {b.id!r} overlap"
                        )
        object.__setattr__(self, "_by_id", by_id)

    def by_id(self, region_id: str) -> TargetRegion:
        return self._by_id[region_id]

    def get(self, region_id: str) -> Optional[TargetRegion]:
        return self._by_id.get(region_id)

    def at_granularity(self, granularity: Granularity) -> List[TargetRegion]:
        return [r for r in self.regions if r.granularity is granularity]

    def to_json_dict(self) -> dict:
        return {
            "viewport": {"w": self.viewport.w, "h": self.viewport.h},
            "regions": [
                {
                    "id": r.id,
                    "rect": [r.rect.x, r.rect.y, r.rect.w, r.rect.h],
                    "granularity": r.granularity.value,
                    **({"parentId": r.parent_id} if r.parent_id is not None else {}),
                    "text": r.text,
                    "sourceUrl": r.source_url,
                }
                for r in self.regions
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TargetMap":
        try:
            viewport = Viewport(float(data["viewport"]["w"]), float(data["viewport"]["h"]))
            regions = []
            for raw in data["regions"]:
                rx, ry, rw, rh = raw["rect"]
                regions.append(
                    TargetRegion(
                        id=str(raw["id"]),
                        rect=Rect(float(rx), float(ry), float(rw), float(rh)),
                        granularity=Granularity(raw["granularity"]),
                        text=str(raw.get("text", "")),
                        source_url=str(raw.get("sourceUrl", "")),
                        parent_id=raw.get("parentId"),
                    )
                )
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed target map: {exc}") from exc
        return cls(regions=tuple(regions), viewport=viewport)


def load_target_map(path: str | Path) -> TargetMap:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"target map {path}: invalid JSON: {exc}") from exc
    return TargetMap.from_json_dict(data)


def save_target_map(target_map: TargetMap, path: str | Path) -> None:
    Path(path).write_text(json.dumps(target_map.to_json_dict(), indent=2) + "\n")


def acquire_target(
    path: Sequence[Point],
    target_map: TargetMap,
    granularity: Granularity,
    resample_n: int = 64,
) -> Optional[str]:
    """Pick the region most of the resampled path falls inside, or None.

    Ties on vote count break by (1) which region contains the path centroid,
    (2) smaller rect area, (3) lexicographically smaller id. A word winner
    whose parent block does not cover the path centroid is rejected so a
    stray word at the fringe of the motion cannot steal the vote.
    """
    if not path:
        return None
    candidates = target_map.at_granularity(granularity)
    if not candidates:
        return None
    points = resample_path(list(path), resample_n)
    centroid = path_centroid(points)
    best: Optional[TargetRegion] = None
    best_key: Optional[tuple] = None
    for region in candidates:
        count = 0
        for p in points:
            if region.rect.contains(p):
                count += 1
        if count == 0:
            continue
        key = (-count, 0 if region.rect.contains(centroid) else 1, region.rect.area, region.id)
        if best_key is None or key < best_key:
            best, best_key = region, key
    if best is None:
        return None
    if granularity is Granularity.WORD and best.parent_id is not None:
        parent = target_map.by_id(best.parent_id)
        if not parent.rect.contains(centroid):
            return None
    return best.id


def target_under_point(p: Point, target_map: TargetMap) -> Optional[str]:
    """Block region containing the point (smallest area, then id, on edge ties)."""
    hits = [
        r
        for r in target_map.at_granularity(Granularity.BLOCK)
        if r.rect.contains(p)
    ]
    if not hits:
        return None
    hits.sort(key=lambda r: (r.rect.area, r.id))
    return hits[0].id


def scroll_adjust(target_map: TargetMap, dy: float) -> TargetMap:
    """Translate every region vertically by dy (viewport unchanged)."""
    moved = tuple(
        replace(r, rect=Rect(r.rect.x, r.rect.y + dy, r.rect.w, r.rect.h))
        for r in target_map.regions
    )
    return TargetMap(regions=moved, viewport=target_map.viewport)
