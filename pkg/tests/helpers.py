"""Shared test machinery: independent invariant checkers, random program
generators, and brute-force oracles.

Everything here deliberately avoids the code paths it checks: snapshots are
validated from their own data alone, the arithmetic oracle evaluates with
unbounded Python ints, and the forest oracle recomputes reachability by
brute force.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from jalgo.interpreter import INT64_MIN, Frame, Trace
from jalgo.lexer import INT64_MAX
from jalgo import parser as ast

# --- independent invariant checks -------------------------------------------


def check_snapshot_invariants(roots: Sequence[int], selected: Optional[int],
                              nodes) -> None:
    """Validate forest shape from the snapshot alone."""
    ids = [n.id for n in nodes]
    assert ids == sorted(ids), "nodes must be ordered by ascending id"
    assert len(set(ids)) == len(ids), "duplicate node ids"
    id_set = set(ids)
    children: list[int] = []
    adjacency: dict[int, list[int]] = {}
    for n in nodes:
        adjacency[n.id] = []
        for child in (n.left, n.right):
            if child is not None:
                assert child in id_set, f"dangling child reference {child}"
                children.append(child)
                adjacency[n.id].append(child)
    assert len(set(children)) == len(children), "a node has two parents"
    child_set = set(children)
    expected_roots = [i for i in ids if i not in child_set]
    assert list(roots) == expected_roots, "roots must be exactly the parentless ids, ascending"
    if selected is not None:
        assert selected in id_set, "selected must be a live node"
    # all nodes reachable from roots exactly once => acyclic forest
    reached = 0
    stack = list(roots)
    seen: set[int] = set()
    while stack:
        cur = stack.pop()
        assert cur not in seen, "cycle or shared subtree detected"
        seen.add(cur)
        reached += 1
        stack.extend(adjacency[cur])
    assert reached == len(ids), "some nodes are unreachable from the roots (cycle)"


def check_trace_invariants(trace: Trace, source: str) -> None:
    line_count = len(source.replace("\r\n", "\n").split("\n"))
    assert len(trace.frames) > 0
    for i, frame in enumerate(trace.frames):
        assert frame.step == i, "frame steps must be contiguous from 0"
        if frame.line == 0:
            assert i == len(trace.frames) - 1 and trace.status == "completed", \
                "line 0 is only the terminal frame of a completed run"
        else:
            assert 1 <= frame.line <= line_count, "frame line outside the source"
        check_snapshot_invariants(frame.roots, frame.selected, frame.nodes)
    assert (trace.status == "runtime_error") == (trace.error is not None)
    steps = {f.step for f in trace.frames}
    for event in trace.output:
        assert event.step in steps, "output event references a missing frame"


def check_conservation(trace: Trace) -> None:
    """Nodes are never garbage-collected: each frame's id set contains the
    previous frame's, and new ids continue the dense allocation order."""
    previous: set[int] = set()
    high_water = 0
    for frame in trace.frames:
        ids = {n.id for n in frame.nodes}
        assert previous <= ids, "a node id disappeared between frames"
        fresh = sorted(ids - previous)
        assert fresh == list(range(high_water + 1, high_water + 1 + len(fresh))), \
            "node ids must be allocated densely in order"
        high_water += len(fresh)
        previous = ids


# --- random well-formed program generator ------------------------------------

_POS = (0, 0)  # placeholder positions; generated programs are re-parsed


@dataclass
class GenConfig:
    max_top_stmts: int = 12
    max_block_stmts: int = 4
    max_expr_depth: int = 3
    max_loops: int = 2
    max_loop_bound: int = 4
    allow_trees: bool = True
    big_literals: bool = False


class ProgramGenerator:
    """Generates well-formed programs (they always compile).

    Reads only ever follow assignments on every path, so R-1 cannot fire;
    occasional R-6/R-9 faults from arithmetic are intended and fine.
    """

    def __init__(self, rng: random.Random, config: GenConfig = GenConfig()):
        self.rng = rng
        self.cfg = config
        self.counter = 0
        self.loops_used = 0
        self.functions: list[ast.FunctionDef] = []

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def literal(self) -> ast.IntLit:
        if self.cfg.big_literals and self.rng.random() < 0.25:
            return ast.IntLit(self.rng.randrange(INT64_MAX // 4, INT64_MAX), *_POS)
        return ast.IntLit(self.rng.randrange(0, 20), *_POS)

    def int_expr(self, ints: list[str], trees: list[str], depth: int) -> ast.Expr:
        roll = self.rng.random()
        if depth <= 0 or roll < 0.35:
            if ints and self.rng.random() < 0.6:
                return ast.Var(self.rng.choice(ints), *_POS)
            return self.literal()
        if roll < 0.45 and trees:
            return ast.Call("value", (ast.Var(self.rng.choice(trees), *_POS),), *_POS)
        if roll < 0.55 and self.functions:
            fn = self.rng.choice(self.functions)
            args = tuple(self.int_expr(ints, trees, depth - 1) for _ in fn.params)
            return ast.Call(fn.name, args, *_POS)
        if roll < 0.65:
            return ast.Unary("negate", self.int_expr(ints, trees, depth - 1), *_POS)
        op = self.rng.choice(["+", "+", "-", "-", "*", "/", "mod"])
        return ast.Binary(op, self.int_expr(ints, trees, depth - 1),
                          self.int_expr(ints, trees, depth - 1), *_POS)

    def bool_expr(self, ints: list[str], bools: list[str], trees: list[str],
                  depth: int) -> ast.Expr:
        roll = self.rng.random()
        if depth <= 0 or roll < 0.3:
            if bools and self.rng.random() < 0.5:
                return ast.Var(self.rng.choice(bools), *_POS)
            return ast.BoolLit(self.rng.random() < 0.5, *_POS)
        if roll < 0.6:
            op = self.rng.choice(["<", "<=", ">", ">=", "=", "<>"])
            return ast.Binary(op, self.int_expr(ints, trees, depth - 1),
                              self.int_expr(ints, trees, depth - 1), *_POS)
        if roll < 0.7 and trees:
            return ast.Call("isNil", (ast.Call(
                self.rng.choice(["left", "right"]),
                (ast.Var(self.rng.choice(trees), *_POS),), *_POS),), *_POS)
        if roll < 0.85:
            op = self.rng.choice(["and", "or"])
            return ast.Binary(op, self.bool_expr(ints, bools, trees, depth - 1),
                              self.bool_expr(ints, bools, trees, depth - 1), *_POS)
        return ast.Unary("not", self.bool_expr(ints, bools, trees, depth - 1), *_POS)

    def statement(self, ints: list[str], bools: list[str], trees: list[str],
                  depth: int) -> ast.Stmt:
        cfg = self.cfg
        choices = ["int", "int", "bool"]
        if cfg.allow_trees:
            choices += ["tree", "treeop", "treeop"]
        if ints or bools or trees:
            choices.append("print")
        if depth > 0:
            choices += ["if", "if"]
            if self.loops_used < cfg.max_loops:
                choices.append("while")
        kind = self.rng.choice(choices)
        if kind == "int":
            name = (self.rng.choice(ints) if ints and self.rng.random() < 0.4
                    else self.fresh("i"))
            st = ast.Assign(name, self.int_expr(ints, trees, cfg.max_expr_depth), *_POS)
            if name not in ints:
                ints.append(name)
            return st
        if kind == "bool":
            name = self.fresh("b")
            st = ast.Assign(name, self.bool_expr(ints, bools, trees, cfg.max_expr_depth), *_POS)
            bools.append(name)
            return st
        if kind == "tree":
            name = self.fresh("t")
            st = ast.Assign(name, ast.Call(
                "newNode", (self.int_expr(ints, trees, 1),), *_POS), *_POS)
            trees.append(name)
            return st
        if kind == "treeop":
            if not trees:
                return self.statement(ints, bools, trees, depth)
            target = ast.Var(self.rng.choice(trees), *_POS)
            op = self.rng.choice(["setLeft", "setRight", "setValue", "select"])
            if op in ("setLeft", "setRight"):
                # a freshly allocated child can never violate the forest rules
                child = ast.Call("newNode", (self.literal(),), *_POS)
                call = ast.Call(op, (target, child), *_POS)
            elif op == "setValue":
                call = ast.Call(op, (target, self.int_expr(ints, trees, 1)), *_POS)
            else:
                call = ast.Call(op, (target,), *_POS)
            return ast.CallStmt(call, *_POS)
        if kind == "print":
            pool = [(n, "var") for n in ints + bools] + [(n, "tree") for n in trees]
            name, which = self.rng.choice(pool)
            arg: ast.Expr = ast.Var(name, *_POS)
            if which == "tree" and self.rng.random() < 0.5:
                arg = ast.Call("value", (arg,), *_POS)
            return ast.CallStmt(ast.Call("print", (arg,), *_POS), *_POS)
        if kind == "if":
            cond = self.bool_expr(ints, bools, trees, 2)
            then = self.block(ints, bools, trees, depth - 1)
            orelse = self.block(ints, bools, trees, depth - 1) if self.rng.random() < 0.5 else ()
            return ast.If(cond, then, orelse, *_POS)
        # while: bounded counter loop; the counter is never reassigned inside
        self.loops_used += 1
        counter = self.fresh("n")
        ints.append(counter)
        bound = self.rng.randrange(1, self.cfg.max_loop_bound + 1)
        body = self.block(ints, bools, trees, depth - 1)
        body += (ast.Assign(counter, ast.Binary(
            "+", ast.Var(counter, *_POS), ast.IntLit(1, *_POS), *_POS), *_POS),)
        loop = ast.While(ast.Binary("<", ast.Var(counter, *_POS),
                                    ast.IntLit(bound, *_POS), *_POS), body, *_POS)
        init = ast.Assign(counter, ast.IntLit(0, *_POS), *_POS)
        return ast.If(ast.BoolLit(True, *_POS), (init, loop), (), *_POS)

    def block(self, ints: list[str], bools: list[str], trees: list[str],
              depth: int) -> tuple[ast.Stmt, ...]:
        # branch-local assignments must not leak into the outer scope's pools
        ints, bools, trees = list(ints), list(bools), list(trees)
        count = self.rng.randrange(1, self.cfg.max_block_stmts + 1)
        return tuple(self.statement(ints, bools, trees, depth) for _ in range(count))

    def function_def(self) -> ast.FunctionDef:
        name = self.fresh("f")
        params = [self.fresh("p") for _ in range(self.rng.randrange(1, 3))]
        ints = list(params)
        body: list[ast.Stmt] = []
        for _ in range(self.rng.randrange(0, 3)):
            var = self.fresh("i")
            body.append(ast.Assign(var, self.int_expr(ints, [], 2), *_POS))
            ints.append(var)
        body.append(ast.Return(self.int_expr(ints, [], 2), *_POS))
        return ast.FunctionDef(name, tuple(params), tuple(body), *_POS)

    def program(self) -> ast.Program:
        self.counter = 0
        self.loops_used = 0
        # reset before generating: bodies may call earlier functions of THIS
        # program, never leftovers from a previous one
        self.functions = []
        for _ in range(self.rng.randrange(0, 3)):
            self.functions.append(self.function_def())
        ints: list[str] = []
        bools: list[str] = []
        trees: list[str] = []
        count = self.rng.randrange(1, self.cfg.max_top_stmts + 1)
        main = tuple(self.statement(ints, bools, trees, 2) for _ in range(count))
        return ast.Program(tuple(self.functions), main)

    def source(self) -> str:
        return ast.to_source(self.program())


# --- straight-line arithmetic programs and their big-int oracle --------------


@dataclass
class StraightLineProgram:
    source: str
    var_order: list[str] = field(default_factory=list)


def gen_straightline(rng: random.Random, big: bool) -> StraightLineProgram:
    """Assignments over int expressions, then a print per variable."""
    names: list[str] = []
    lines = ["begin"]

    def expr(depth: int) -> str:
        roll = rng.random()
        if depth <= 0 or roll < 0.3:
            if names and rng.random() < 0.55:
                return rng.choice(names)
            if big and rng.random() < 0.3:
                return str(rng.randrange(INT64_MAX // 8, INT64_MAX))
            return str(rng.randrange(0, 50))
        if roll < 0.4:
            return f"(-{expr(depth - 1)})"
        op = rng.choice(["+", "+", "-", "*", "*", "/", "mod"])
        return f"({expr(depth - 1)} {op} {expr(depth - 1)})"

    for _ in range(rng.randrange(3, 9)):
        name = f"v{len(names)}"
        lines.append(f"  {name} := {expr(rng.randrange(1, 4))}")
        names.append(name)
    for name in names:
        lines.append(f"  print({name})")
    lines.append("end")
    return StraightLineProgram("\n".join(lines) + "\n", names)


class OracleFault(Exception):
    def __init__(self, code: str):
        self.code = code


def _oracle_eval(e: ast.Expr, env: dict[str, int]) -> int:
    if isinstance(e, ast.IntLit):
        return e.value
    if isinstance(e, ast.Var):
        return env[e.name]
    if isinstance(e, ast.Unary):
        result = -_oracle_eval(e.operand, env)
        if not INT64_MIN <= result <= INT64_MAX:
            raise OracleFault("R-9")
        return result
    assert isinstance(e, ast.Binary)
    a = _oracle_eval(e.left, env)
    b = _oracle_eval(e.right, env)
    if e.op == "+":
        result = a + b
    elif e.op == "-":
        result = a - b
    elif e.op == "*":
        result = a * b
    elif e.op == "/":
        if b == 0:
            raise OracleFault("R-6")
        result = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            result = -result
    else:  # mod
        if b == 0:
            raise OracleFault("R-6")
        q = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            q = -q
        return a - q * b
    if not INT64_MIN <= result <= INT64_MAX:
        raise OracleFault("R-9")
    return result


def oracle_run(program: ast.Program):
    """Evaluate a straight-line program with unbounded ints.

    Returns ("ok", env) or ("fault", code, line-of-failing-statement).
    """
    env: dict[str, int] = {}
    for st in program.main:
        try:
            if isinstance(st, ast.Assign):
                env[st.target] = _oracle_eval(st.value, env)
        except OracleFault as fault:
            return ("fault", fault.code, st.line)
    return ("ok", env)


# --- naive forest model for the tree-store oracle ----------------------------


class ModelForest:
    """Dict-based mirror of the store with brute-force rule checks."""

    def __init__(self) -> None:
        self.nodes: dict[int, dict] = {}
        self.next_id = 1

    def alloc(self, value: int) -> int:
        node_id = self.next_id
        self.next_id += 1
        self.nodes[node_id] = {"value": value, "left": None, "right": None, "parent": None}
        return node_id

    def predict_set_child(self, parent: int, side: str, child: Optional[int]) -> Optional[str]:
        """Fault code the rules demand, or None if the op must succeed."""
        if parent not in self.nodes:
            return "R-2"
        if child is not None:
            if child not in self.nodes:
                return "R-2"
            if self.nodes[child]["parent"] is not None:
                return "R-3"
            # brute-force reachability walk from child
            stack, seen = [child], set()
            while stack:
                cur = stack.pop()
                if cur == parent:
                    return "R-4"
                if cur in seen:
                    continue
                seen.add(cur)
                for s in ("left", "right"):
                    nxt = self.nodes[cur][s]
                    if nxt is not None:
                        stack.append(nxt)
        return None

    def apply_set_child(self, parent: int, side: str, child: Optional[int]) -> None:
        old = self.nodes[parent][side]
        if old is not None:
            self.nodes[old]["parent"] = None
        self.nodes[parent][side] = child
        if child is not None:
            self.nodes[child]["parent"] = parent

    def snapshot_tuples(self):
        return [(i, n["value"], n["left"], n["right"]) for i, n in sorted(self.nodes.items())]

    def roots(self) -> list[int]:
        return [i for i, n in sorted(self.nodes.items()) if n["parent"] is None]


# --- synthetic traces for controller tests -----------------------------------


def synthetic_trace(rng: random.Random, max_len: int = 40) -> Trace:
    length = rng.randrange(1, max_len)
    lines = [rng.randrange(1, 9) for _ in range(length)] + [0]
    frames = tuple(Frame(i, line, (), None, ()) for i, line in enumerate(lines))
    return Trace(frames, "completed", None, ())
