#!/usr/bin/env python3
"""Regenerate the bundled test fixtures under tests/data/.

Rebuilds the labeled replay corpus and the golden event logs from seeded
synthetic traces (plus one handcrafted chained collection across two blocks).
Everything is deterministic, so running this twice is a no-op; goldens change
only when recognizer behavior changes, which is exactly what the golden suite
is there to catch.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from wigglekit.events import SwipeDirection
from wigglekit.geometry import PointerSample
from wigglekit.replay import LABEL_NON_WIGGLE, LABEL_WIGGLE, golden_check
from wigglekit.synth import TraceKind, TraceSpec, generate, single_block_map
from wigglekit.targets import (
    Granularity,
    Rect,
    TargetMap,
    TargetRegion,
    Viewport,
    save_target_map,
)
from wigglekit.traceio import write_trace

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"


def two_block_map() -> TargetMap:
    return TargetMap(
        regions=(
            TargetRegion(
                id="blockA",
                rect=Rect(100.0, 100.0, 400.0, 300.0),
                granularity=Granularity.BLOCK,
                text="First paragraph of the page.",
                source_url="https://alpha.example/article",
            ),
            TargetRegion(
                id="blockB",
                rect=Rect(600.0, 100.0, 400.0, 300.0),
                granularity=Granularity.BLOCK,
                text="Second paragraph of the page.",
                source_url="https://alpha.example/article",
            ),
        ),
        viewport=Viewport(1280.0, 800.0),
    )


def chain_trace() -> list[PointerSample]:
    """Wiggle over blockA, glide right, wiggle over blockB, stop."""
    xs: list[float] = []
    xs += [300.0, 360.0, 240.0, 360.0, 240.0, 360.0, 240.0]  # five reversals
    xs += [350.0, 450.0, 550.0, 650.0, 750.0, 800.0]  # glide between blocks
    xs += [860.0, 740.0, 860.0, 740.0, 860.0, 740.0]  # five more over blockB
    return [PointerSample(t=i * 16, x=x, y=250.0) for i, x in enumerate(xs)]


def build_corpus(root: Path) -> int:
    corpus = root / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    save_target_map(single_block_map(), corpus / "page.targets.json")

    entries = []

    def add(name: str, label: str, spec: TraceSpec, mode: str) -> None:
        write_trace(generate(spec), corpus / f"{name}.trace.jsonl")
        entries.append(
            {
                "name": name,
                "label": label,
                "trace": f"{name}.trace.jsonl",
                "targets": "page.targets.json",
                "mode": mode,
            }
        )

    desktop_wiggles = [
        (1, 30.0, 3, 0.0),
        (2, 45.0, 4, 0.0),
        (3, 60.0, 4, 1.0),
        (4, 75.0, 5, 0.0),
        (5, 90.0, 5, 2.0),
        (6, 105.0, 6, 0.0),
        (7, 60.0, 6, 1.5),
        (8, 40.0, 3, 0.5),
    ]
    for seed, amplitude, cycles, noise in desktop_wiggles:
        add(
            f"wiggle-desktop-{seed:02d}",
            LABEL_WIGGLE,
            TraceSpec(
                kind=TraceKind.WIGGLE,
                seed=seed,
                amplitude_px=amplitude,
                cycles=cycles,
                noise_sigma_px=noise,
            ),
            "desktop",
        )

    for seed in (11, 12, 13, 14):
        add(
            f"wiggle-mobile-{seed}",
            LABEL_WIGGLE,
            TraceSpec(kind=TraceKind.WIGGLE, seed=seed, mode="mobile"),
            "mobile",
        )

    non_wiggles = [
        (TraceKind.READING_DRIFT, 21),
        (TraceKind.READING_DRIFT, 22),
        (TraceKind.SCROLL, 23),
        (TraceKind.SCROLL, 24),
        (TraceKind.DRAG_SELECT, 25),
        (TraceKind.DRAG_SELECT, 26),
        (TraceKind.CLICK_MOVE, 27),
        (TraceKind.CLICK_MOVE, 28),
    ]
    for kind, seed in non_wiggles:
        add(
            f"{kind.value}-{seed}",
            LABEL_NON_WIGGLE,
            TraceSpec(kind=kind, seed=seed),
            "desktop",
        )

    (corpus / "manifest.json").write_text(json.dumps({"entries": entries}, indent=2) + "\n")
    return len(entries)


def build_goldens(root: Path) -> int:
    golden = root / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    save_target_map(single_block_map(), golden / "page.targets.json")
    save_target_map(two_block_map(), golden / "chain.targets.json")

    cases = []

    def add(name: str, trace, targets: str, mode: str) -> None:
        write_trace(trace, golden / f"{name}.trace.jsonl")
        cases.append(
            {
                "name": name,
                "trace": f"{name}.trace.jsonl",
                "targets": targets,
                "golden": f"{name}.golden.jsonl",
                "mode": mode,
            }
        )

    add(
        "plain-wiggle",
        generate(TraceSpec(kind=TraceKind.WIGGLE, seed=2)),
        "page.targets.json",
        "desktop",
    )
    add(
        "valence-right-full",
        generate(
            TraceSpec(
                kind=TraceKind.WIGGLE_SWIPE,
                seed=4,
                swipe_direction=SwipeDirection.RIGHT,
                swipe_fraction=1.0,
            )
        ),
        "page.targets.json",
        "desktop",
    )
    add(
        "priority-up-edge",
        generate(
            TraceSpec(
                kind=TraceKind.WIGGLE_SWIPE,
                seed=5,
                swipe_direction=SwipeDirection.UP,
                swipe_fraction=0.95,
            )
        ),
        "page.targets.json",
        "desktop",
    )
    add(
        "mobile-valence-left",
        generate(
            TraceSpec(
                kind=TraceKind.WIGGLE_SWIPE,
                seed=6,
                mode="mobile",
                swipe_direction=SwipeDirection.LEFT,
                swipe_fraction=0.5,
            )
        ),
        "page.targets.json",
        "mobile",
    )
    add("chain-two-blocks", chain_trace(), "chain.targets.json", "desktop")
    add(
        "reading-drift",
        generate(TraceSpec(kind=TraceKind.READING_DRIFT, seed=7)),
        "page.targets.json",
        "desktop",
    )

    (golden / "manifest.json").write_text(json.dumps({"cases": cases}, indent=2) + "\n")
    report = golden_check(golden, update=True)
    assert report.ok
    return len(cases)


def main() -> int:
    entries = build_corpus(DATA_DIR)
    cases = build_goldens(DATA_DIR)
    print(f"wrote {entries} corpus entries and {cases} golden cases under {DATA_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
