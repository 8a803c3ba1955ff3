"""Cursor navigation over a recorded trace: stepping and breakpoints.

The trace is fully recorded up front, so stepping backward is pure replay;
nothing is ever re-executed.
"""
from __future__ import annotations

from typing import Sequence

from .interpreter import Frame, Trace

DIRECTIONS = ("forward", "back")


def find_break(frames: Sequence[Frame], cursor: int, direction: str,
               lines: set[int]) -> int:
    """Index of the nearest frame strictly beyond `cursor` whose line is in
    `lines`; falls back to the last frame (forward) or frame 0 (back).

    The terminal frame's line is 0 and never matches a breakpoint.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, not {direction!r}")
    if direction == "forward":
        for i in range(cursor + 1, len(frames)):
            if frames[i].line in lines:
                return i
        return len(frames) - 1
    for i in range(cursor - 1, -1, -1):
        if frames[i].line in lines:
            return i
    return 0


class Session:
    """One client's view over an immutable trace."""

    def __init__(self, trace: Trace):
        if not trace.frames:
            raise ValueError("cannot open a session on an empty trace")
        self.trace = trace
        self.cursor = 0
        self.breakpoints: set[int] = set()

    @classmethod
    def open(cls, trace: Trace) -> "Session":
        return cls(trace)

    @property
    def current(self) -> Frame:
        return self.trace.frames[self.cursor]

    def step(self, direction: str) -> int:
        """Move the cursor by one frame, clamped at either end."""
        if direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, not {direction!r}")
        delta = 1 if direction == "forward" else -1
        self.cursor = min(max(self.cursor + delta, 0), len(self.trace.frames) - 1)
        return self.cursor

    def toggle_breakpoint(self, line: int) -> frozenset[int]:
        """Flip membership of a 1-based line; lines that never execute are
        legal and simply never match."""
        if line < 1:
            raise ValueError("breakpoint line must be >= 1")
        if line in self.breakpoints:
            self.breakpoints.discard(line)
        else:
            self.breakpoints.add(line)
        return frozenset(self.breakpoints)

    def continue_(self, direction: str) -> int:
        """Run to the next breakpoint frame in `direction`; with no match,
        to the last frame (forward) or frame 0 (back)."""
        self.cursor = find_break(self.trace.frames, self.cursor, direction, self.breakpoints)
        return self.cursor
