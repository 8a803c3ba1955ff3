"""Tree-walking interpreter that records one frame per executed statement.

A frame is emitted immediately before a statement runs (for `if` and
`while`, before each condition evaluation, including a while loop's final
failing check) and once more, with line 0, after the main block completes.
Every frame is delivered to each registered observer in registration order
before execution proceeds; the trace recorder itself is the first observer.
"""
from __future__ import annotations

import sys
import threading
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .analyzer import SymbolTable
from .errors import RuntimeFault
from .lexer import INT64_MAX
from .parser import (
    Assign, Binary, BoolLit, Call, CallStmt, Expr, FunctionDef, If, IntLit,
    NilLit, Program, Return, Stmt, Unary, Var, While,
)
from .tree_store import NodeStore, SnapshotNode

INT64_MIN = -INT64_MAX - 1

COMPLETED = "completed"
RUNTIME_ERROR = "runtime_error"
STEP_LIMIT = "step_limit"


@dataclass(frozen=True)
class NodeRef:
    """A first-class reference to a live tree node."""

    id: int


#: Runtime values: 64-bit ints, bools, node references, and nil (None).
Value = Union[int, bool, NodeRef, None]


@dataclass(frozen=True)
class Frame:
    """One animation step: the line about to run plus a forest snapshot."""

    step: int
    line: int  # 0 only on the terminal frame of a completed run
    roots: tuple[int, ...]
    selected: Optional[int]
    nodes: tuple[SnapshotNode, ...]


@dataclass(frozen=True)
class OutputEvent:
    step: int
    text: str


@dataclass(frozen=True)
class RunError:
    code: str
    message: str
    line: int


@dataclass(frozen=True)
class Trace:
    frames: tuple[Frame, ...]
    status: str  # completed | runtime_error | step_limit
    error: Optional[RunError]
    output: tuple[OutputEvent, ...]


@dataclass(frozen=True)
class RunLimits:
    max_frames: int = 100_000
    max_nodes: int = 10_000

    def __post_init__(self) -> None:
        if self.max_frames < 1 or self.max_nodes < 1:
            raise ValueError("limits must be >= 1")


FrameObserver = Callable[[Frame], None]


class _StepLimit(Exception):
    pass


class _Return(Exception):
    def __init__(self, value: Value):
        self.value = value


def _type_name(v: Value) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, NodeRef):
        return "node"
    return "nil"


def format_value(v: Value) -> str:
    """Render a value the way `print` does."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, NodeRef):
        return f"node#{v.id}"
    return "nil"


def _check64(n: int) -> int:
    if n < INT64_MIN or n > INT64_MAX:
        raise RuntimeFault("R-9", "integer overflow")
    return n


def _values_equal(a: Value, b: Value) -> bool:
    if _type_name(a) != _type_name(b):
        return False
    if isinstance(a, NodeRef):
        return a.id == b.id  # type: ignore[union-attr]
    return a == b


class _Machine:
    def __init__(self, program: Program, table: SymbolTable, limits: RunLimits,
                 observers: Sequence[FrameObserver]):
        self.program = program
        self.table = table
        self.limits = limits
        self.observers = tuple(observers)
        self.funcs: dict[str, FunctionDef] = {f.name: f for f in program.functions}
        self.store = NodeStore()
        self.frames: list[Frame] = []
        self.output: list[OutputEvent] = []
        self.current_line = 0

    def run(self) -> Trace:
        status, error = COMPLETED, None
        try:
            self.exec_block(self.program.main, {})
            self.emit(0)
        except _StepLimit:
            status = STEP_LIMIT
        except RuntimeFault as fault:
            status = RUNTIME_ERROR
            error = RunError(fault.code, fault.message, fault.line or self.current_line)
        return Trace(tuple(self.frames), status, error, tuple(self.output))

    def emit(self, line: int) -> None:
        if len(self.frames) >= self.limits.max_frames:
            raise _StepLimit()
        snap = self.store.snapshot()
        frame = Frame(len(self.frames), line, snap.roots, snap.selected, snap.nodes)
        self.frames.append(frame)
        for observer in self.observers:
            observer(frame)

    # -- statements --

    def exec_block(self, stmts: tuple[Stmt, ...], env: dict[str, Value]) -> None:
        for st in stmts:
            self.exec_stmt(st, env)

    def exec_stmt(self, st: Stmt, env: dict[str, Value]) -> None:
        if isinstance(st, Assign):
            self.emit(st.line)
            self.current_line = st.line
            env[st.target] = self.eval_expr(st.value, env)
        elif isinstance(st, CallStmt):
            self.emit(st.line)
            self.current_line = st.line
            self.eval_expr(st.call, env)
        elif isinstance(st, If):
            self.emit(st.line)
            self.current_line = st.line
            cond = self.eval_expr(st.cond, env)
            branch = st.then if self._truth(cond, "'if' condition") else st.orelse
            self.exec_block(branch, env)
        elif isinstance(st, While):
            while True:
                self.emit(st.line)
                self.current_line = st.line
                if not self._truth(self.eval_expr(st.cond, env), "'while' condition"):
                    break
                self.exec_block(st.body, env)
        elif isinstance(st, Return):
            self.emit(st.line)
            self.current_line = st.line
            value = self.eval_expr(st.value, env) if st.value is not None else None
            raise _Return(value)
        else:
            raise AssertionError(f"unknown statement {st!r}")

    # -- expressions --

    def eval_expr(self, e: Expr, env: dict[str, Value]) -> Value:
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, BoolLit):
            return e.value
        if isinstance(e, NilLit):
            return None
        if isinstance(e, Var):
            try:
                return env[e.name]
            except KeyError:
                raise RuntimeFault("R-1", f"variable '{e.name}' read before assignment") from None
        if isinstance(e, Call):
            return self.eval_call(e, env)
        if isinstance(e, Unary):
            return self.eval_unary(e, env)
        if isinstance(e, Binary):
            return self.eval_binary(e, env)
        raise AssertionError(f"unknown expression {e!r}")

    def eval_unary(self, e: Unary, env: dict[str, Value]) -> Value:
        v = self.eval_expr(e.operand, env)
        if e.op == "not":
            return not self._require_bool(v, "'not' operand")
        return _check64(-self._require_int(v, "'-' operand"))

    def eval_binary(self, e: Binary, env: dict[str, Value]) -> Value:
        op = e.op
        if op == "and":
            left = self._require_bool(self.eval_expr(e.left, env), "'and' operand")
            if not left:
                return False
            return self._require_bool(self.eval_expr(e.right, env), "'and' operand")
        if op == "or":
            left = self._require_bool(self.eval_expr(e.left, env), "'or' operand")
            if left:
                return True
            return self._require_bool(self.eval_expr(e.right, env), "'or' operand")
        lhs = self.eval_expr(e.left, env)
        rhs = self.eval_expr(e.right, env)
        if op == "=":
            return _values_equal(lhs, rhs)
        if op == "<>":
            return not _values_equal(lhs, rhs)
        a = self._require_int(lhs, f"'{op}' operand")
        b = self._require_int(rhs, f"'{op}' operand")
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        if op == "+":
            return _check64(a + b)
        if op == "-":
            return _check64(a - b)
        if op == "*":
            return _check64(a * b)
        if op == "/":
            if b == 0:
                raise RuntimeFault("R-6", "division by zero")
            return _check64(_trunc_div(a, b))
        if op == "mod":
            if b == 0:
                raise RuntimeFault("R-6", "modulo by zero")
            return a - _trunc_div(a, b) * b  # sign follows the dividend
        raise AssertionError(f"unknown operator {op!r}")

    # -- calls --

    def eval_call(self, call: Call, env: dict[str, Value]) -> Value:
        argv = [self.eval_expr(a, env) for a in call.args]
        info = self.table.functions.get(call.name)
        if info is not None and info.is_builtin:
            return self.call_builtin(call.name, argv)
        fn = self.funcs[call.name]
        local: dict[str, Value] = dict(zip(fn.params, argv))
        # Restored only on normal exits: a fault raised inside the callee must
        # keep the callee's line, while a fault after the call resumes belongs
        # to the calling statement.
        prev_line = self.current_line
        try:
            self.exec_block(fn.body, local)
        except _Return as ret:
            self.current_line = prev_line
            return ret.value
        self.current_line = prev_line
        return None  # fell off the end

    def call_builtin(self, name: str, argv: list[Value]) -> Value:
        store = self.store
        if name == "newNode":
            value = self._require_int(argv[0], "newNode value")
            if len(store) >= self.limits.max_nodes:
                raise RuntimeFault("R-8", f"node limit exceeded ({self.limits.max_nodes})")
            node_id = store.alloc(value)
            store.selected = node_id
            return NodeRef(node_id)
        if name == "value":
            node_id = self._node_arg(argv[0], "value")
            result = store.value_of(node_id)
            store.selected = node_id
            return result
        if name == "setValue":
            node_id = self._node_arg(argv[0], "setValue")
            store.set_value(node_id, self._require_int(argv[1], "setValue value"))
            store.selected = node_id
            return None
        if name in ("left", "right"):
            node_id = self._node_arg(argv[0], name)
            child = store.child_of(node_id, name)
            store.selected = node_id
            return NodeRef(child) if child is not None else None
        if name in ("setLeft", "setRight"):
            side = "left" if name == "setLeft" else "right"
            node_id = self._node_arg(argv[0], name)
            child = argv[1]
            if child is None:
                child_id = None
            elif isinstance(child, NodeRef):
                child_id = child.id
            else:
                raise RuntimeFault(
                    "R-5", f"{name} child must be a node or nil, got {_type_name(child)}")
            store.set_child(node_id, side, child_id)
            store.selected = node_id
            return None
        if name == "select":
            target = argv[0]
            if target is None:
                store.selected = None
            elif isinstance(target, NodeRef):
                store.value_of(target.id)  # liveness check
                store.selected = target.id
            else:
                raise RuntimeFault(
                    "R-5", f"select expects a node or nil, got {_type_name(target)}")
            return None
        if name == "isNil":
            return argv[0] is None
        if name == "print":
            self.output.append(OutputEvent(self.frames[-1].step, format_value(argv[0])))
            return None
        raise AssertionError(f"unknown builtin {name!r}")

    # -- dynamic type checks --

    def _truth(self, v: Value, what: str) -> bool:
        return self._require_bool(v, what)

    def _require_bool(self, v: Value, what: str) -> bool:
        if isinstance(v, bool):
            return v
        raise RuntimeFault("R-5", f"{what} must be a bool, got {_type_name(v)}")

    def _require_int(self, v: Value, what: str) -> int:
        if isinstance(v, int) and not isinstance(v, bool):
            return v
        raise RuntimeFault("R-5", f"{what} must be an int, got {_type_name(v)}")

    def _node_arg(self, v: Value, what: str) -> int:
        if isinstance(v, NodeRef):
            self.store.value_of(v.id)  # liveness check (R-2 if dead)
            return v.id
        if v is None:
            raise RuntimeFault("R-2", f"{what} got nil, a node is required")
        raise RuntimeFault("R-5", f"{what} expects a node, got {_type_name(v)}")


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


# Deep jAlgo recursion (bounded by max_frames) turns into deep Python
# recursion, so runs happen on a worker thread with a large stack.  The
# reservation is virtual; pages are only committed if recursion gets deep.
_EXEC_STACK_BYTES = 1 << 30
_MAX_PY_RECURSION = 1_100_000
_PY_FRAMES_PER_STEP = 12
_spawn_lock = threading.Lock()


def execute(program: Program, table: SymbolTable,
            limits: Optional[RunLimits] = None,
            observers: Sequence[FrameObserver] = ()) -> Trace:
    """Run an analyzed program to completion, error, or the frame limit.

    The program must have passed `analyze`.  Execution is deterministic:
    equal inputs produce structurally identical traces.  Exceeding
    `max_frames` yields status "step_limit" with exactly `max_frames`
    frames; a runtime error ends the trace at the failing statement's frame
    with no terminal frame.
    """
    run_limits = limits if limits is not None else RunLimits()
    box: dict[str, object] = {}

    def worker() -> None:
        needed = min(_PY_FRAMES_PER_STEP * run_limits.max_frames + 10_000, _MAX_PY_RECURSION)
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)  # only ever raised, never lowered
        try:
            box["trace"] = _Machine(program, table, run_limits, observers).run()
        except BaseException as exc:  # re-raised in the calling thread
            box["error"] = exc

    with _spawn_lock:
        threading.stack_size(_EXEC_STACK_BYTES)
        try:
            thread = threading.Thread(target=worker, name="jalgo-run", daemon=True)
            thread.start()
        finally:
            threading.stack_size(0)
    thread.join()
    if "error" in box:
        raise box["error"]  # type: ignore[misc]
    return box["trace"]  # type: ignore[return-value]
