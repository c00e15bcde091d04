"""FastAPI app serving solved inference trees and the debugger UI.

The service owns an immutable document snapshot, regenerated whole when
the source file changes on disk; every endpoint is read-only, and /api/
events notifies connected clients with a "document" event after each
re-solve.
"""

from __future__ import annotations

import asyncio
import os
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import HTMLResponse, Response, StreamingResponse
from fastapi.staticfiles import StaticFiles

from ..document import build_document, document_to_json
from ..engine import SolveConfig
from ..parser import parse_context
from ..wellformed import check_well_formed
from ..syntax import Context, ImplBlock
from ..document import impl_head_text
from ..printer import FULLY_QUALIFIED, SHORTENED
from .models import GoalSummary, ImplHead, ImplList, SourceReply

STATIC_DIR = Path(__file__).resolve().parent.parent / "static"

PLACEHOLDER = """<!doctype html>
<html><head><meta charset="utf-8"><title>traitscope</title></head>
<body><h1>traitscope</h1>
<p>The web UI has not been built. The JSON API is live under <code>/api/</code>:
goals, tree?goal=, node/{id}, impls?trait=, rankings?goal=, source?file=&amp;line=,
and an SSE stream at /api/events.</p></body></html>
"""


@dataclass
class Snapshot:
    context: Context
    document: dict
    generation: int


class DocumentStore:
    """Holds the current snapshot; reloads when the file changes."""

    def __init__(self, path: str, config: SolveConfig):
        self.path = os.path.abspath(path)
        self.config = config
        self._mtime = 0.0
        self.snapshot = self._load(generation=0)

    def _load(self, generation: int) -> Snapshot:
        with open(self.path, encoding="utf-8") as handle:
            source = handle.read()
        self._mtime = os.path.getmtime(self.path)
        context = parse_context(source, filename=self.path)
        problems = check_well_formed(context)
        if problems:
            raise ValueError(
                "; ".join(f"{self.path}: {p.message}" for p in problems)
            )
        document = build_document(context, self.config)
        return Snapshot(context, document, generation)

    def reload_if_changed(self) -> bool:
        try:
            mtime = os.path.getmtime(self.path)
        except OSError:
            return False
        if mtime == self._mtime:
            return False
        try:
            self.snapshot = self._load(self.snapshot.generation + 1)
        except Exception:
            # A half-written or broken file keeps the previous snapshot.
            self._mtime = mtime
            return False
        return True


async def event_stream(store: "DocumentStore", interval: float = 0.25):
    """SSE frames: one "document" event per re-solved generation."""
    seen = store.snapshot.generation
    yield ": connected\n\n"
    while True:
        await asyncio.sleep(interval)
        current = store.snapshot.generation
        if current != seen:
            seen = current
            yield f"event: document\ndata: {current}\n\n"


def create_app(path: str, config: SolveConfig | None = None) -> FastAPI:
    store = DocumentStore(path, config or SolveConfig())

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        async def poll():
            while True:
                await asyncio.sleep(0.5)
                await asyncio.to_thread(store.reload_if_changed)

        watcher = asyncio.create_task(poll())
        try:
            yield
        finally:
            watcher.cancel()

    app = FastAPI(title="traitscope", version="1", lifespan=lifespan)
    app.state.store = store

    @app.get("/api/goals", response_model=list[GoalSummary])
    def goals():
        doc = store.snapshot.document
        return [
            GoalSummary(label=g["label"], result=g["result"]) for g in doc["goals"]
        ]

    @app.get("/api/tree")
    def tree(goal: str = Query(...)):
        doc = store.snapshot.document
        if not any(g["label"] == goal for g in doc["goals"]):
            raise HTTPException(404, f"unknown goal label {goal!r}")
        fragment = {
            "schema_version": doc["schema_version"],
            "symbols": doc["symbols"],
            "goals": [g for g in doc["goals"] if g["label"] == goal],
            "rankings": {goal: doc["rankings"][goal]},
            "views": {goal: doc["views"][goal]},
        }
        return Response(document_to_json(fragment), media_type="application/json")

    @app.get("/api/node/{node_id}")
    def node(node_id: int):
        doc = store.snapshot.document
        for g in doc["goals"]:
            payload = g["nodes"].get(str(node_id))
            if payload is not None:
                return {"id": node_id, "goal": g["label"], **payload}
        raise HTTPException(404, f"no node {node_id}")

    @app.get("/api/impls", response_model=ImplList)
    def impls(trait: str = Query(...)):
        context = store.snapshot.context
        sid = context.symbol_by_path(trait)
        if sid is None:
            matches = [
                s for s in context.symbols_by_name(trait)
                if context.symbol_table[s].kind == "trait"
            ]
            sid = matches[0] if len(matches) == 1 else None
        if sid is None or context.symbol_table[sid].kind != "trait":
            raise HTTPException(404, f"unknown trait {trait!r}")
        heads = []
        for impl in context.impls_of(sid):
            heads.append(
                ImplHead(
                    id=impl.id,
                    head_short=impl_head_text(impl, SHORTENED, context),
                    head_qualified=impl_head_text(impl, FULLY_QUALIFIED, context),
                    span={
                        "file": impl.span.file,
                        "line_start": impl.span.line_start,
                        "line_end": impl.span.line_end,
                    },
                    trait=context.path_of(sid),
                )
            )
        return ImplList(trait=context.path_of(sid), impls=heads)

    @app.get("/api/rankings")
    def rankings(goal: str = Query(...)):
        doc = store.snapshot.document
        if goal not in doc["rankings"]:
            raise HTTPException(404, f"unknown goal label {goal!r}")
        return doc["rankings"][goal]

    @app.get("/api/source", response_model=SourceReply)
    def source(file: str = Query(...), line: int = Query(1)):
        context = store.snapshot.context
        text = context.source_files.get(file)
        if text is None and os.path.abspath(file) in context.source_files:
            text = context.source_files[os.path.abspath(file)]
        if text is None:
            raise HTTPException(404, f"unknown source file {file!r}")
        return SourceReply(file=file, line=line, text=text)

    @app.get("/api/events")
    async def events():
        return StreamingResponse(
            event_stream(store), media_type="text/event-stream"
        )

    index_file = STATIC_DIR / "index.html"
    if index_file.exists():
        app.mount("/", StaticFiles(directory=str(STATIC_DIR), html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def placeholder():
            return PLACEHOLDER

    return app
