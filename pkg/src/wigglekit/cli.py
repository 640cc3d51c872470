"""Command line front end: replay, corpora, goldens, synthesis, triage, serve.

Exit codes: 0 success, 1 usage error, 2 malformed input file, 3 golden
mismatch. The replay path never touches the wall clock, so identical inputs
always produce byte-identical event logs.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional
from urllib.parse import urlparse

from .engine import EngineConfig, Mode, load_config
from .errors import FormatError
from .events import Committed, SwipeDirection
from .replay import (
    golden_check,
    run_corpus,
    run_trace,
    read_event_log,
    write_event_log,
)
from .store import TriageStore
from .synth import TraceKind, TraceSpec, generate, random_layout, single_block_map
from .targets import Viewport, load_target_map, save_target_map
from .traceio import read_trace, write_trace

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_GOLDEN = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; route that through our own codes
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wigglekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay one trace against a target map")
    run.add_argument("--trace", required=True)
    run.add_argument("--targets", required=True)
    run.add_argument("--mode", choices=[m.value for m in Mode], default="desktop")
    run.add_argument("--config", help="engine config JSON (overrides --mode)")
    run.add_argument("--label", default=None, help="expected kind, e.g. wiggle / non-wiggle")
    run.add_argument("--log", help="write the event log here (JSON lines)")
    run.add_argument("--out", help="write the run report here (JSON)")

    corpus = sub.add_parser("corpus", help="replay a labeled corpus directory")
    corpus.add_argument("--dir", required=True)
    corpus.add_argument("--config", help="engine config JSON applied to every entry")
    corpus.add_argument("--out", help="write the corpus report here (JSON)")

    golden = sub.add_parser("golden", help="check recorded event logs byte-for-byte")
    golden.add_argument("--dir", required=True)
    golden.add_argument("--update", action="store_true", help="rewrite goldens instead")

    gen = sub.add_parser("generate", help="synthesize a labeled pointer trace")
    gen.add_argument("--kind", required=True, choices=[k.value for k in TraceKind])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--mode", choices=[m.value for m in Mode], default="desktop")
    gen.add_argument("--amplitude", type=float, default=60.0)
    gen.add_argument("--cycles", type=int, default=4)
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--rate", type=float, default=125.0)
    gen.add_argument("--anchor", default="640,400", help="X,Y of the gesture center")
    gen.add_argument("--viewport", default="1280x800", help="WxH in px")
    gen.add_argument("--swipe", choices=[d.value for d in SwipeDirection])
    gen.add_argument("--swipe-fraction", type=float, default=0.5)
    gen.add_argument("--out-trace", required=True)
    gen.add_argument("--out-targets", help="also write a target map covering the anchor")
    gen.add_argument(
        "--layout-seed",
        type=int,
        help="write a multi-block random layout instead of one centered block",
    )

    triage = sub.add_parser("triage", help="apply committed collections to a store file")
    triage.add_argument("--log", required=True, help="event log produced by run")
    triage.add_argument("--targets", required=True, help="map used to resolve part texts")
    triage.add_argument("--store", required=True, help="store JSON, created if absent")
    triage.add_argument("--base-now", type=int, default=0, help="timestamp of the first event")
    triage.add_argument("--export-topic", help="print this topic as markdown afterwards")

    serve = sub.add_parser("serve", help="start the HTTP bridge for interactive hosts")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument("--store", help="persist the triage store at this path")
    serve.add_argument("--static", help="also serve this directory at /")

    return parser


def _parse_pair(text: str, sep: str, what: str) -> tuple:
    head, _, tail = text.partition(sep)
    try:
        return float(head), float(tail)
    except ValueError:
        raise _UsageError(f"bad {what}: {text!r}") from None


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return EngineConfig(mode=Mode(args.mode))


def _cmd_run(args: argparse.Namespace) -> int:
    trace = read_trace(args.trace)
    target_map = load_target_map(args.targets)
    config = _engine_config(args)
    report, events = run_trace(
        trace, target_map, config, trace_id=Path(args.trace).stem, label=args.label
    )
    if args.log:
        write_event_log(events, args.log)
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False) + "\n"
        )
    print(
        f"{report.trace_id}: activations={report.activations} "
        f"commits={len(report.commits)} aborts={report.aborts} "
        f"medianFeedUs={report.latency_median_us:.1f}"
    )
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else None
    report = run_corpus(args.dir, config)
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False) + "\n"
        )
    print(
        f"wiggles activated {report.wiggle_activated}/{report.wiggle_total} "
        f"(rate {report.activation_rate:.3f}), "
        f"false activations {report.false_activations}, "
        f"median feed {report.latency_median_us:.1f} us"
    )
    return EXIT_OK


def _cmd_golden(args: argparse.Namespace) -> int:
    report = golden_check(args.dir, update=args.update)
    for case in report.cases:
        if case.status == "ok":
            print(f"ok       {case.name}" + (f" ({case.detail})" if case.detail else ""))
        elif case.status == "missing-golden":
            print(f"MISSING  {case.name}: {case.detail}")
        else:
            print(f"MISMATCH {case.name}: {case.detail}")
    return EXIT_OK if report.ok else EXIT_GOLDEN


def _cmd_generate(args: argparse.Namespace) -> int:
    ax, ay = _parse_pair(args.anchor, ",", "--anchor")
    vw, vh = _parse_pair(args.viewport, "x", "--viewport")
    viewport = Viewport(vw, vh)
    spec = TraceSpec(
        kind=TraceKind(args.kind),
        seed=args.seed,
        mode=args.mode,
        amplitude_px=args.amplitude,
        cycles=args.cycles,
        noise_sigma_px=args.noise,
        sample_rate_hz=args.rate,
        anchor=(ax, ay),
        swipe_direction=SwipeDirection(args.swipe) if args.swipe else None,
        swipe_fraction=args.swipe_fraction,
        viewport=viewport,
    )
    trace = generate(spec)
    write_trace(trace, args.out_trace)
    if args.out_targets:
        if args.layout_seed is not None:
            import random

            target_map = random_layout(random.Random(args.layout_seed), viewport)
        else:
            target_map = single_block_map(viewport)
        save_target_map(target_map, args.out_targets)
    print(f"wrote {len(trace)} samples to {args.out_trace}")
    return EXIT_OK


def _cmd_triage(args: argparse.Namespace) -> int:
    events = read_event_log(args.log)
    target_map = load_target_map(args.targets)
    store_path = Path(args.store)
    store = TriageStore.load(store_path) if store_path.exists() else TriageStore()
    created: List[str] = []
    for position, event in enumerate(events):
        if not isinstance(event, Committed):
            continue
        parts = []
        provenance = ""
        for target_id in event.target_ids:
            region = target_map.get(target_id)
            if region is None:
                raise FormatError(f"{args.log}: commit names unknown target {target_id!r}")
            parts.append((target_id, region.text))
            if not provenance:
                provenance = urlparse(region.source_url).netloc
        created.append(
            store.add_clip(parts, event.encoding, provenance, now=args.base_now + position)
        )
    store.save(store_path)
    print(f"applied {len(created)} commits: {' '.join(created) if created else '(none)'}")
    if args.export_topic:
        print(store.export_topic_markdown(args.export_topic), end="")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(store_path=args.store, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "corpus": _cmd_corpus,
    "golden": _cmd_golden,
    "generate": _cmd_generate,
    "triage": _cmd_triage,
    "serve": _cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
