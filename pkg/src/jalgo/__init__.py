"""jAlgo: a tiny tree-manipulating teaching language with a frame-recording
interpreter, time-travel stepping, and a local animation service."""
from __future__ import annotations

from typing import Optional, Sequence

from .analyzer import BUILTINS, FunctionInfo, SymbolTable, analyze
from .errors import CompileError, CompileFailure, RuntimeFault
from .interpreter import (
    Frame, FrameObserver, NodeRef, OutputEvent, RunError, RunLimits, Trace,
    Value, execute, format_value,
)
from .lexer import Token, tokenize
from .parser import Program, parse, to_source
from .session import Session, find_break
from .tree_store import ForestSnapshot, NodeStore, SnapshotNode

__version__ = "0.1.0"

__all__ = [
    "BUILTINS", "CompileError", "CompileFailure", "ForestSnapshot", "Frame",
    "FrameObserver", "FunctionInfo", "NodeRef", "NodeStore", "OutputEvent",
    "Program", "RunError", "RunLimits", "RuntimeFault", "Session",
    "SnapshotNode", "SymbolTable", "Token", "Trace", "Value", "analyze",
    "compile_source", "execute", "find_break", "format_value", "parse",
    "to_source", "tokenize", "trace_source", "__version__",
]


def compile_source(source: str) -> tuple[Program, SymbolTable]:
    """Lex, parse, and analyze source text.

    Raises CompileFailure carrying every error from the first failing phase.
    """
    tokens = tokenize(source)
    program = parse(tokens)
    table = analyze(program)
    return program, table


def trace_source(source: str, limits: Optional[RunLimits] = None,
                 observers: Sequence[FrameObserver] = ()) -> Trace:
    """Compile and run source text, returning the recorded trace."""
    program, table = compile_source(source)
    return execute(program, table, limits, observers)
