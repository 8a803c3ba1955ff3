"""Canonical JSON encoding shared by the CLI and the HTTP service.

Key order is fixed by the wire schema and arrays keep schema order, so equal
data always serializes to identical bytes.
"""
from __future__ import annotations

import json
from typing import Any, Iterable, Optional

from .errors import CompileError
from .interpreter import Frame, OutputEvent, RunError, Trace


def dumps(payload: Any) -> str:
    return json.dumps(payload, separators=(",", ":"))


def dump_bytes(payload: Any) -> bytes:
    return dumps(payload).encode("utf-8")


def frame_obj(frame: Frame) -> dict:
    return {
        "step": frame.step,
        "line": frame.line,
        "roots": list(frame.roots),
        "selected": frame.selected,
        "nodes": [
            {"id": n.id, "value": n.value, "left": n.left, "right": n.right}
            for n in frame.nodes
        ],
    }


def error_obj(error: Optional[RunError]) -> Optional[dict]:
    if error is None:
        return None
    return {"code": error.code, "message": error.message, "line": error.line}


def output_events_obj(events: Iterable[OutputEvent]) -> list[dict]:
    return [{"step": ev.step, "text": ev.text} for ev in events]


def trace_document(trace: Trace) -> dict:
    return {
        "frames": [frame_obj(f) for f in trace.frames],
        "status": trace.status,
        "error": error_obj(trace.error),
        "output": output_events_obj(trace.output),
    }


def compile_error_obj(error: CompileError) -> dict:
    return {
        "phase": error.phase,
        "code": error.code,
        "line": error.line,
        "column": error.column,
        "message": error.message,
    }
