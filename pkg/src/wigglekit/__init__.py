"""Wiggle-gesture recognition, extension swipes, and a triage store.

A small pointer gesture (rapid direction reversals over content) collects
the text under the pointer without clicks or selection handles. Optional
follow-up swipes attach a rating or a priority. Collected clips land in a
holding tank with filters, a focus threshold, and single-step undo.
"""
from __future__ import annotations

from .engine import (
    EngineConfig,
    Mode,
    MultiBlockUnsupportedError,
    Phase,
    PhaseError,
    RecognizerState,
    SampleOrderError,
    WiggleEngine,
    classify_extension,
    classify_granularity,
    compute_valence,
    load_config,
    priority_from_swipe,
)
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
    encoding_from_wire,
    encoding_to_wire,
    event_from_wire,
    event_line,
    event_to_wire,
    parse_event_line,
)
from .geometry import (
    Axis,
    DirectionSegment,
    LateralExtent,
    PointerKind,
    PointerSample,
    SamplePhase,
    Trace,
    count_reversals,
    direction_segments,
    lateral_extent,
    path_centroid,
    resample_path,
)
from .replay import (
    CorpusReport,
    GoldenReport,
    RunReport,
    golden_check,
    read_event_log,
    run_corpus,
    run_trace,
    write_event_log,
)
from .store import (
    UNDO_WINDOW_MS,
    Clip,
    ClipState,
    NoPendingUndoError,
    QueryResult,
    SortKey,
    TankQuery,
    Topic,
    TriageStore,
    UnknownIdError,
)
from .synth import TraceKind, TraceSpec, generate, mirror_trace, random_layout, single_block_map
from .targets import (
    Granularity,
    Rect,
    TargetMap,
    TargetRegion,
    Viewport,
    acquire_target,
    load_target_map,
    save_target_map,
    target_under_point,
)
from .traceio import read_trace, sample_from_wire, sample_to_wire, write_trace

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "WigglekitError",
    "FormatError",
    "SampleOrderError",
    "MultiBlockUnsupportedError",
    "PhaseError",
    "NoPendingUndoError",
    "UnknownIdError",
    # geometry
    "Axis",
    "PointerSample",
    "SamplePhase",
    "PointerKind",
    "Trace",
    "DirectionSegment",
    "LateralExtent",
    "direction_segments",
    "count_reversals",
    "lateral_extent",
    "path_centroid",
    "resample_path",
    # targets
    "Granularity",
    "Rect",
    "TargetRegion",
    "TargetMap",
    "Viewport",
    "acquire_target",
    "target_under_point",
    "load_target_map",
    "save_target_map",
    # events
    "RecognitionEvent",
    "TrackingProgress",
    "Aborted",
    "Activated",
    "ExtensionUpdated",
    "Committed",
    "PassThrough",
    "SwipeDirection",
    "PriorityLevel",
    "Valence",
    "Priority",
    "Encoding",
    "encoding_to_wire",
    "encoding_from_wire",
    "event_to_wire",
    "event_from_wire",
    "event_line",
    "parse_event_line",
    # engine
    "WiggleEngine",
    "EngineConfig",
    "Mode",
    "Phase",
    "RecognizerState",
    "classify_granularity",
    "classify_extension",
    "compute_valence",
    "priority_from_swipe",
    "load_config",
    # store
    "TriageStore",
    "TankQuery",
    "SortKey",
    "Clip",
    "Topic",
    "ClipState",
    "QueryResult",
    "UNDO_WINDOW_MS",
    # synthesis
    "TraceKind",
    "TraceSpec",
    "generate",
    "mirror_trace",
    "single_block_map",
    "random_layout",
    # io + replay
    "read_trace",
    "write_trace",
    "sample_to_wire",
    "sample_from_wire",
    "RunReport",
    "CorpusReport",
    "GoldenReport",
    "run_trace",
    "run_corpus",
    "golden_check",
    "write_event_log",
    "read_event_log",
]
