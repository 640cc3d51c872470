"""Trace files: one JSON object per line, {"t", "x", "y", "phase", "kind"}."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .errors import FormatError
from .geometry import PointerKind, PointerSample, SamplePhase, Trace


def sample_to_wire(sample: PointerSample) -> dict:
    return {
        "t": sample.t,
        "x": sample.x,
        "y": sample.y,
        "phase": sample.phase.value,
        "kind": sample.kind.value,
    }


def sample_from_wire(data: dict) -> PointerSample:
    try:
        t = data["t"]
        if not isinstance(t, int) or t < 0:
            raise ValueError(f"t must be a non-negative integer, got {t!r}")
        return PointerSample(
            t=t,
            x=float(data["x"]),
            y=float(data["y"]),
            phase=SamplePhase(data.get("phase", "move")),
            kind=PointerKind(data.get("kind", "mouse")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed sample: {data!r}: {exc}") from exc


def trace_to_lines(trace: Sequence[PointerSample]) -> str:
    return "".join(
        json.dumps(sample_to_wire(s), separators=(",", ":")) + "\n" for s in trace
    )


def write_trace(trace: Sequence[PointerSample], path: str | Path) -> None:
    Path(path).write_text(trace_to_lines(trace))


def read_trace(path: str | Path) -> Trace:
    trace: Trace = []
    last_t = None
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
        sample = sample_from_wire(data)
        if last_t is not None and sample.t < last_t:
            raise FormatError(
                f"{path}:{lineno}: timestamp {sample.t} regresses below {last_t}"
            )
        last_t = sample.t
        trace.append(sample)
    return trace
