"""HTTP bridge so browser hosts can drive the recognizer and the store.

Sessions are in-memory recognizer instances keyed by id; each keeps its own
event sequence counter so the envelopes a client receives line up with what
an offline replay of the same samples would produce. The triage store is a
single shared instance, optionally persisted to disk after every mutation.
"""
from __future__ import annotations

import itertools
import threading
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .engine import EngineConfig, WiggleEngine
from .errors import FormatError, WigglekitError
from .events import RecognitionEvent, encoding_from_wire, event_to_wire
from .store import (
    NoPendingUndoError,
    SortKey,
    TankQuery,
    TriageStore,
    UnknownIdError,
    clip_to_wire,
    topic_to_wire,
)
from .targets import TargetMap
from .traceio import sample_from_wire


class _Session:
    def __init__(self, config: EngineConfig) -> None:
        self.engine = WiggleEngine(config)
        self.target_map: Optional[TargetMap] = None
        self._seq = itertools.count()

    def envelopes(self, events: List[RecognitionEvent]) -> List[dict]:
        return [event_to_wire(e, next(self._seq)) for e in events]


def _tank_query(body: dict) -> TankQuery:
    try:
        return TankQuery(
            enabled_filters=frozenset(body.get("enabledFilters", [])),
            sort_key=SortKey(body.get("sortKey", "valenceDesc")),
            focus_threshold=int(body.get("focusThreshold", 0)),
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def create_app(
    store_path: Optional[str] = None, static_dir: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="wigglekit bridge")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: Dict[str, _Session] = {}
    session_ids = itertools.count()
    store_file = Path(store_path) if store_path else None
    store = (
        TriageStore.load(store_file)
        if store_file is not None and store_file.exists()
        else TriageStore()
    )
    store_lock = threading.Lock()

    def persist() -> None:
        if store_file is not None:
            store.save(store_file)

    def session_of(session_id: str) -> _Session:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")

    @app.exception_handler(FormatError)
    async def _format_error(_, exc: FormatError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"ok": True}

    @app.get("/defaults")
    def defaults() -> dict:
        return EngineConfig().to_json_dict()

    # -- recognizer sessions -----------------------------------------------------

    @app.post("/sessions")
    def create_session(body: dict = Body(default={})) -> dict:
        config = (
            EngineConfig.from_json_dict(body["config"])
            if body.get("config")
            else EngineConfig()
        )
        session_id = f"s{next(session_ids)}"
        sessions[session_id] = _Session(config)
        return {"sessionId": session_id, "config": config.to_json_dict()}

    @app.post("/sessions/{session_id}/targets")
    def set_targets(session_id: str, body: dict) -> dict:
        session = session_of(session_id)
        session.target_map = TargetMap.from_json_dict(body)
        return {"regions": len(session.target_map.regions)}

    @app.post("/sessions/{session_id}/feed")
    def feed(session_id: str, body: dict) -> dict:
        session = session_of(session_id)
        if body.get("targets") is not None:
            session.target_map = TargetMap.from_json_dict(body["targets"])
        if session.target_map is None:
            raise HTTPException(status_code=422, detail="no target map set")
        events: List[RecognitionEvent] = []
        try:
            for raw in body.get("samples", []):
                events.extend(
                    session.engine.feed(sample_from_wire(raw), session.target_map)
                )
        except WigglekitError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"events": session.envelopes(events)}

    @app.post("/sessions/{session_id}/tick")
    def tick(session_id: str, body: dict) -> dict:
        session = session_of(session_id)
        try:
            now_ms = int(body["nowMs"])
        except (KeyError, TypeError, ValueError):
            raise HTTPException(status_code=422, detail="nowMs (int) is required")
        closing = session.engine.tick(now_ms)
        return {"events": session.envelopes([closing] if closing else [])}

    @app.get("/sessions/{session_id}/state")
    def state(session_id: str) -> dict:
        snapshot = session_of(session_id).engine.state()
        return {
            "phase": snapshot.phase.value,
            "reversalCount": snapshot.reversal_count,
            "wiggleCenter": list(snapshot.wiggle_center)
            if snapshot.wiggle_center
            else None,
            "candidateTarget": snapshot.candidate_target,
            "pendingGranularity": snapshot.pending_granularity.value
            if snapshot.pending_granularity
            else None,
            "pendingTargetIds": list(snapshot.pending_target_ids),
        }

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str) -> dict:
        session_of(session_id).engine.reset()
        return {"ok": True}

    @app.delete("/sessions/{session_id}")
    def drop_session(session_id: str) -> dict:
        session_of(session_id)
        del sessions[session_id]
        return {"ok": True}

    # -- triage store --------------------------------------------------------------

    @app.get("/store")
    def get_store() -> dict:
        with store_lock:
            return store.to_json_dict()

    @app.get("/store/filters")
    def get_filters() -> dict:
        with store_lock:
            return {"filters": sorted(store.available_filters())}

    @app.post("/store/clips")
    def add_clip(body: dict) -> dict:
        try:
            parts = [(str(r), str(t)) for r, t in body["parts"]]
            encoding = encoding_from_wire(body.get("encoding"))
            provenance = str(body.get("provenance", ""))
            now = int(body["now"])
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=f"bad clip payload: {exc}")
        with store_lock:
            created = store.add_clip(parts, encoding, provenance, now)
            persist()
        return {"id": created}

    @app.post("/store/clips/{clip_id}/valence")
    def set_valence(clip_id: str, body: dict) -> dict:
        valence = body.get("valence")
        try:
            with store_lock:
                store.set_valence(
                    clip_id,
                    None if valence is None else int(valence),
                    now=body.get("now"),
                )
                persist()
                return clip_to_wire(store.clip(clip_id))
        except UnknownIdError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/store/clips/{clip_id}/notes")
    def set_notes(clip_id: str, body: dict) -> dict:
        try:
            with store_lock:
                store.set_notes(clip_id, str(body.get("notes", "")), now=body.get("now"))
                persist()
                return clip_to_wire(store.clip(clip_id))
        except UnknownIdError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.post("/store/clips/{clip_id}/assign")
    def assign_topic(clip_id: str, body: dict) -> dict:
        if "topicId" not in body:
            raise HTTPException(status_code=422, detail="topicId is required")
        try:
            with store_lock:
                store.assign_topic(clip_id, str(body["topicId"]), now=body.get("now"))
                persist()
                return clip_to_wire(store.clip(clip_id))
        except UnknownIdError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.post("/store/undo")
    def undo(body: dict) -> dict:
        try:
            now = int(body["now"])
        except (KeyError, TypeError, ValueError):
            raise HTTPException(status_code=422, detail="now (int) is required")
        try:
            with store_lock:
                store.undo_last(now)
                persist()
        except NoPendingUndoError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"ok": True}

    @app.post("/store/query")
    def query(body: dict = Body(default={})) -> dict:
        tank_query = _tank_query(body)
        with store_lock:
            result = store.query_clips(tank_query)
        return {
            "main": [clip_to_wire(c) for c in result.main],
            "belowFocus": [clip_to_wire(c) for c in result.below_focus],
        }

    @app.post("/store/batch-trash")
    def batch_trash(body: dict = Body(default={})) -> dict:
        tank_query = _tank_query(body)
        with store_lock:
            trashed = store.batch_trash(tank_query, now=body.get("now"))
            persist()
        return {"trashed": trashed}

    @app.get("/store/topics")
    def topics() -> dict:
        with store_lock:
            return {"topics": [topic_to_wire(t) for t in store.sort_topics()]}

    @app.get("/store/topics/{topic_id}/markdown")
    def topic_markdown(topic_id: str) -> PlainTextResponse:
        try:
            with store_lock:
                return PlainTextResponse(store.export_topic_markdown(topic_id))
        except UnknownIdError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
