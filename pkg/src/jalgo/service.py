"""Local HTTP/JSON service: compile-and-trace plus frame retrieval.

Traces are recorded eagerly at program creation, so clients only ever pull
immutable data; the server holds no cursor and repeated reads return
byte-identical canonical JSON.
"""
from __future__ import annotations

import json
import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware

from . import compile_source
from .encoding import (
    compile_error_obj, dump_bytes, error_obj, frame_obj, output_events_obj,
)
from .errors import CompileFailure
from .interpreter import RunLimits, Trace, execute
from .session import find_break

MAX_SOURCE_BYTES = 1 << 20
STORE_CAPACITY = 256
DEFAULT_FRAME_PAGE = 100
MAX_FRAME_PAGE = 1000


@dataclass(frozen=True)
class ProgramRecord:
    program_id: str
    source: str
    trace: Trace
    created_at: float


class ProgramStore:
    """Thread-safe LRU store of immutable program records."""

    def __init__(self, capacity: int = STORE_CAPACITY):
        self._capacity = capacity
        self._records: "OrderedDict[str, ProgramRecord]" = OrderedDict()
        self._lock = threading.Lock()

    def put(self, record: ProgramRecord) -> None:
        with self._lock:
            self._records[record.program_id] = record
            self._records.move_to_end(record.program_id)
            while len(self._records) > self._capacity:
                self._records.popitem(last=False)

    def get(self, program_id: str) -> Optional[ProgramRecord]:
        with self._lock:
            record = self._records.get(program_id)
            if record is not None:
                self._records.move_to_end(program_id)
            return record

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)


def _json_response(payload: object, status_code: int = 200) -> Response:
    return Response(content=dump_bytes(payload), status_code=status_code,
                    media_type="application/json")


def _detail(status_code: int, message: str) -> Response:
    return _json_response({"detail": message}, status_code)


def _parse_int(raw: Optional[str]) -> Optional[int]:
    if raw is None:
        return None
    try:
        return int(raw.strip())
    except ValueError:
        return None


def create_app(store: Optional[ProgramStore] = None) -> FastAPI:
    programs = store if store is not None else ProgramStore()
    app = FastAPI(title="jalgo service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    app.state.store = programs

    @app.post("/api/programs")
    async def create_program(request: Request) -> Response:
        raw = await request.body()
        if len(raw) > MAX_SOURCE_BYTES + 4096:
            return _detail(413, "request body too large")
        try:
            body = json.loads(raw)
        except ValueError:
            return _detail(400, "malformed JSON body")
        if not isinstance(body, dict) or not isinstance(body.get("source"), str):
            return _detail(400, "body must be a JSON object with a string 'source'")
        source = body["source"]
        if len(source.encode("utf-8")) > MAX_SOURCE_BYTES:
            return _detail(413, "source exceeds 1 MiB")
        limit_kwargs = {}
        for key in ("max_frames", "max_nodes"):
            if key in body and body[key] is not None:
                v = body[key]
                if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                    return _detail(400, f"{key} must be a positive integer")
                limit_kwargs[key] = v
        try:
            program, table = compile_source(source)
        except CompileFailure as failure:
            return _json_response(
                {"errors": [compile_error_obj(e) for e in failure.errors]}, 422)
        # off the event loop: tracing may take a while under large limits
        trace = await run_in_threadpool(execute, program, table, RunLimits(**limit_kwargs))
        record = ProgramRecord(uuid.uuid4().hex, source, trace, time.time())
        programs.put(record)
        return _json_response({
            "program_id": record.program_id,
            "frame_count": len(trace.frames),
            "status": trace.status,
            "error": error_obj(trace.error),
        }, 201)

    @app.get("/api/programs/{program_id}")
    def get_program(program_id: str) -> Response:
        record = programs.get(program_id)
        if record is None:
            return _detail(404, "unknown program")
        trace = record.trace
        return _json_response({
            "program_id": record.program_id,
            "source": record.source,
            "frame_count": len(trace.frames),
            "status": trace.status,
            "error": error_obj(trace.error),
            "output": output_events_obj(trace.output),
        })

    @app.get("/api/programs/{program_id}/frames")
    def get_frames(program_id: str, request: Request) -> Response:
        record = programs.get(program_id)
        if record is None:
            return _detail(404, "unknown program")
        params = request.query_params
        start = _parse_int(params.get("from", "0"))
        count = _parse_int(params.get("count", str(DEFAULT_FRAME_PAGE)))
        if start is None or start < 0:
            return _detail(400, "'from' must be a non-negative integer")
        if count is None or not 1 <= count <= MAX_FRAME_PAGE:
            return _detail(400, f"'count' must be an integer in 1..{MAX_FRAME_PAGE}")
        frames = record.trace.frames
        if start >= len(frames):
            return _detail(416, "'from' is past the last frame")
        window = frames[start:min(start + count, len(frames))]
        return _json_response({"frames": [frame_obj(f) for f in window]})

    @app.get("/api/programs/{program_id}/next-break")
    def next_break(program_id: str, request: Request) -> Response:
        record = programs.get(program_id)
        if record is None:
            return _detail(404, "unknown program")
        params = request.query_params
        cursor = _parse_int(params.get("from"))
        direction = params.get("dir", "")
        if direction not in ("forward", "back"):
            return _detail(400, "'dir' must be 'forward' or 'back'")
        frames = record.trace.frames
        if cursor is None or not 0 <= cursor < len(frames):
            return _detail(400, "'from' must be a valid frame index")
        lines: set[int] = set()
        raw_lines = params.get("lines", "")
        if raw_lines:
            for part in raw_lines.split(","):
                line = _parse_int(part)
                if line is None or line < 1:
                    return _detail(400, "'lines' must be comma-separated positive integers")
                lines.add(line)
        return _json_response({"index": find_break(frames, cursor, direction, lines)})

    return app
