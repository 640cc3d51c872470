"""Deterministic trace replay, corpus scoring, and golden-log checking.

Replay never consults the wall clock: idle expiry comes from the sample
timestamps themselves plus one final flush tick past the last sample, so a
(config, map, trace) triple always yields the identical event log.
"""
from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import EngineConfig, Mode, WiggleEngine
from .errors import FormatError
from .events import (
    Aborted,
    Activated,
    Committed,
    Encoding,
    RecognitionEvent,
    encoding_to_wire,
    event_line,
    parse_event_line,
)
from .geometry import Trace
from .targets import TargetMap, load_target_map
from .traceio import read_trace

LABEL_WIGGLE = "wiggle"
LABEL_NON_WIGGLE = "non-wiggle"


@dataclass
class RunReport:
    trace_id: str
    activations: int
    commits: List[Tuple[Tuple[str, ...], Encoding]]
    aborts: int
    false_activations: int
    latency_samples_us: List[float] = field(repr=False, default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def latency_median_us(self) -> float:
        return statistics.median(self.latency_samples_us) if self.latency_samples_us else 0.0

    def to_json_dict(self, include_latency_samples: bool = False) -> dict:
        data = {
            "traceId": self.trace_id,
            "activations": self.activations,
            "commits": [
                {"targetIds": list(ids), "encoding": encoding_to_wire(enc)}
                for ids, enc in self.commits
            ],
            "aborts": self.aborts,
            "falseActivations": self.false_activations,
            "latencyUsMedian": self.latency_median_us,
            "warnings": list(self.warnings),
        }
        if include_latency_samples:
            data["latencyUs"] = list(self.latency_samples_us)
        return data


def replay_events(
    trace: Trace, target_map: TargetMap, config: EngineConfig
) -> Tuple[List[RecognitionEvent], List[float]]:
    """Feed a whole trace, flush the trailing episode, time each feed call."""
    engine = WiggleEngine(config)
    events: List[RecognitionEvent] = []
    latencies: List[float] = []
    for sample in trace:
        started = time.perf_counter_ns()
        events.extend(engine.feed(sample, target_map))
        latencies.append((time.perf_counter_ns() - started) / 1000.0)
    if trace:
        closing = engine.tick(trace[-1].t + config.idle_timeout_ms)
        if closing is not None:
            events.append(closing)
    return events, latencies


def run_trace(
    trace: Trace,
    target_map: TargetMap,
    config: EngineConfig,
    trace_id: str = "trace",
    label: Optional[str] = None,
) -> Tuple[RunReport, List[RecognitionEvent]]:
    events, latencies = replay_events(trace, target_map, config)
    activations = sum(1 for e in events if isinstance(e, Activated))
    commits = [(e.target_ids, e.encoding) for e in events if isinstance(e, Committed)]
    aborts = sum(1 for e in events if isinstance(e, Aborted))
    report = RunReport(
        trace_id=trace_id,
        activations=activations,
        commits=commits,
        aborts=aborts,
        false_activations=activations if label == LABEL_NON_WIGGLE else 0,
        latency_samples_us=latencies,
    )
    return report, events


def event_log_text(events: Sequence[RecognitionEvent]) -> str:
    return "".join(event_line(e, seq) + "\n" for seq, e in enumerate(events))


def write_event_log(events: Sequence[RecognitionEvent], path: str | Path) -> None:
    Path(path).write_text(event_log_text(events))


def read_event_log(path: str | Path) -> List[RecognitionEvent]:
    events = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            _, event = parse_event_line(line)
        except FormatError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
        events.append(event)
    return events


# -- corpus --------------------------------------------------------------------


@dataclass
class CorpusEntryResult:
    name: str
    label: str
    report: RunReport


@dataclass
class CorpusReport:
    entries: List[CorpusEntryResult]

    @property
    def wiggle_total(self) -> int:
        return sum(1 for e in self.entries if e.label == LABEL_WIGGLE)

    @property
    def wiggle_activated(self) -> int:
        return sum(
            1 for e in self.entries if e.label == LABEL_WIGGLE and e.report.activations > 0
        )

    @property
    def activation_rate(self) -> float:
        total = self.wiggle_total
        return self.wiggle_activated / total if total else 0.0

    @property
    def false_activations(self) -> int:
        return sum(e.report.false_activations for e in self.entries)

    @property
    def latency_median_us(self) -> float:
        merged: List[float] = []
        for e in self.entries:
            merged.extend(e.report.latency_samples_us)
        return statistics.median(merged) if merged else 0.0

    def to_json_dict(self) -> dict:
        return {
            "wiggleTotal": self.wiggle_total,
            "wiggleActivated": self.wiggle_activated,
            "activationRate": self.activation_rate,
            "falseActivations": self.false_activations,
            "latencyUsMedian": self.latency_median_us,
            "entries": [
                {"name": e.name, "label": e.label, **e.report.to_json_dict()}
                for e in self.entries
            ],
        }


def _load_manifest(directory: Path) -> dict:
    manifest_path = directory / "manifest.json"
    if not manifest_path.exists():
        raise FormatError(f"{directory}: no manifest.json")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{manifest_path}: invalid JSON: {exc}") from exc
    if not isinstance(manifest, dict):
        raise FormatError(f"{manifest_path}: expected a JSON object")
    return manifest


def _entry_config(directory: Path, entry: dict, override: Optional[EngineConfig]) -> EngineConfig:
    if override is not None:
        return override
    if "config" in entry:
        from .engine import load_config

        return load_config(directory / entry["config"])
    mode = Mode(entry.get("mode", "desktop"))
    return EngineConfig(mode=mode)


def run_corpus(directory: str | Path, config: Optional[EngineConfig] = None) -> CorpusReport:
    """Replay every manifest entry, scoring activation rates against labels."""
    directory = Path(directory)
    manifest = _load_manifest(directory)
    results: List[CorpusEntryResult] = []
    for entry in manifest.get("entries", []):
        try:
            name = entry["name"]
            label = entry.get("label", LABEL_WIGGLE)
            trace = read_trace(directory / entry["trace"])
            target_map = load_target_map(directory / entry["targets"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"{directory}/manifest.json: malformed entry: {exc}") from exc
        entry_config = _entry_config(directory, entry, config)
        report, _ = run_trace(trace, target_map, entry_config, trace_id=name, label=label)
        results.append(CorpusEntryResult(name=name, label=label, report=report))
    return CorpusReport(entries=results)


# -- goldens --------------------------------------------------------------------


@dataclass
class GoldenCaseResult:
    name: str
    status: str  # "ok" | "mismatch" | "missing-golden"
    detail: str = ""


@dataclass
class GoldenReport:
    cases: List[GoldenCaseResult]

    @property
    def ok(self) -> bool:
        return all(c.status == "ok" for c in self.cases)


def _golden_case_events(directory: Path, case: dict) -> List[RecognitionEvent]:
    trace = read_trace(directory / case["trace"])
    target_map = load_target_map(directory / case["targets"])
    if "config" in case:
        from .engine import load_config

        config = load_config(directory / case["config"])
    else:
        config = EngineConfig(mode=Mode(case.get("mode", "desktop")))
    events, _ = replay_events(trace, target_map, config)
    return events


def golden_check(directory: str | Path, update: bool = False) -> GoldenReport:
    """Replay every golden case and diff the produced log byte-for-byte.

    Trace files in the directory that no manifest case covers are reported
    as missing goldens rather than ignored, so new recordings cannot slip
    through unchecked. With update=True mismatching or absent golden files
    are rewritten instead.
    """
    directory = Path(directory)
    manifest = _load_manifest(directory)
    cases = manifest.get("cases", [])
    results: List[GoldenCaseResult] = []
    covered = set()
    for case in cases:
        name = case.get("name", case.get("trace", "?"))
        try:
            covered.add(case["trace"])
            golden_rel = case["golden"]
        except KeyError as exc:
            raise FormatError(f"golden manifest entry missing {exc}") from exc
        produced = event_log_text(_golden_case_events(directory, case))
        golden_path = directory / golden_rel
        if update:
            golden_path.write_text(produced)
            results.append(GoldenCaseResult(name, "ok", "updated"))
            continue
        if not golden_path.exists():
            results.append(GoldenCaseResult(name, "missing-golden", f"{golden_rel} not found"))
            continue
        expected = golden_path.read_text()
        if produced == expected:
            results.append(GoldenCaseResult(name, "ok"))
        else:
            detail = _first_divergence(expected, produced)
            results.append(GoldenCaseResult(name, "mismatch", detail))
    for trace_file in sorted(directory.glob("*.trace.jsonl")):
        if trace_file.name not in covered:
            results.append(
                GoldenCaseResult(
                    trace_file.name, "missing-golden", "trace has no manifest case"
                )
            )
    return GoldenReport(cases=results)


def _first_divergence(expected: str, produced: str) -> str:
    exp_lines = expected.splitlines()
    got_lines = produced.splitlines()
    for i, (a, b) in enumerate(zip(exp_lines, got_lines), start=1):
        if a != b:
            return f"line {i}: expected {a!r}, got {b!r}"
    if len(exp_lines) != len(got_lines):
        return f"length differs: expected {len(exp_lines)} lines, got {len(got_lines)}"
    return "no difference"
