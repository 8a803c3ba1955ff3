"""Semantic checking and symbol-table construction over the abstract tree."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CompileError, CompileFailure
from .parser import (
    Assign, Binary, Call, CallStmt, Expr, FunctionDef, If, Program, Return,
    Stmt, Unary, While,
)

#: Builtin functions and their arities.
BUILTINS: dict[str, int] = {
    "newNode": 1,
    "value": 1,
    "setValue": 2,
    "left": 1,
    "right": 1,
    "setLeft": 2,
    "setRight": 2,
    "select": 1,
    "isNil": 1,
    "print": 1,
}


@dataclass(frozen=True)
class FunctionInfo:
    arity: int
    is_builtin: bool
    line: int  # 0 for builtins


@dataclass(frozen=True)
class SymbolTable:
    """Function signatures plus per-scope assigned-variable sets.

    Scopes are flat: one set for the main block and one per function
    (parameters included).  There are no globals.
    """

    functions: dict[str, FunctionInfo]
    main_vars: frozenset[str]
    function_vars: dict[str, frozenset[str]]


def analyze(program: Program) -> SymbolTable:
    """Resolve calls, check arities and name rules, and build the table.

    Use-before-assignment is deliberately not checked here; it surfaces as
    runtime error R-1.  All semantic errors are collected and raised
    together as a CompileFailure.
    """
    errors: list[CompileError] = []
    functions = {name: FunctionInfo(arity, True, 0) for name, arity in BUILTINS.items()}

    for fn in program.functions:
        if fn.name in BUILTINS:
            errors.append(_fn_error(fn, f"function '{fn.name}' redefines a builtin", "E-SEM-6"))
        elif fn.name in functions:
            errors.append(_fn_error(fn, f"duplicate function name '{fn.name}'", "E-SEM-3"))
        else:
            functions[fn.name] = FunctionInfo(len(fn.params), False, fn.line)
        seen: set[str] = set()
        for param in fn.params:
            if param in seen:
                errors.append(_fn_error(
                    fn, f"duplicate parameter '{param}' in function '{fn.name}'", "E-SEM-4"))
            seen.add(param)

    def check_call(call: Call) -> None:
        info = functions.get(call.name)
        if info is None:
            errors.append(CompileError(
                "semantic", call.line, call.column,
                f"unknown function '{call.name}'", "E-SEM-1"))
            return
        if len(call.args) != info.arity:
            errors.append(CompileError(
                "semantic", call.line, call.column,
                f"function '{call.name}' expects {info.arity} argument(s), got {len(call.args)}",
                "E-SEM-2"))

    def walk_expr(e: Expr) -> None:
        if isinstance(e, Call):
            check_call(e)
            for arg in e.args:
                walk_expr(arg)
        elif isinstance(e, Unary):
            walk_expr(e.operand)
        elif isinstance(e, Binary):
            walk_expr(e.left)
            walk_expr(e.right)

    def walk_stmts(stmts: tuple[Stmt, ...], assigned: set[str], in_function: bool) -> None:
        for st in stmts:
            if isinstance(st, Assign):
                if st.target in functions:
                    errors.append(CompileError(
                        "semantic", st.line, st.column,
                        f"variable '{st.target}' collides with function name", "E-SEM-7"))
                assigned.add(st.target)
                walk_expr(st.value)
            elif isinstance(st, CallStmt):
                walk_expr(st.call)
            elif isinstance(st, Return):
                if not in_function:
                    errors.append(CompileError(
                        "semantic", st.line, st.column,
                        "'return' outside a function body", "E-SEM-5"))
                if st.value is not None:
                    walk_expr(st.value)
            elif isinstance(st, If):
                walk_expr(st.cond)
                walk_stmts(st.then, assigned, in_function)
                walk_stmts(st.orelse, assigned, in_function)
            elif isinstance(st, While):
                walk_expr(st.cond)
                walk_stmts(st.body, assigned, in_function)

    function_vars: dict[str, frozenset[str]] = {}
    for fn in program.functions:
        assigned = set(fn.params)
        walk_stmts(fn.body, assigned, True)
        function_vars[fn.name] = frozenset(assigned)
    main_assigned: set[str] = set()
    walk_stmts(program.main, main_assigned, False)

    if errors:
        raise CompileFailure(sorted(errors, key=lambda e: (e.line, e.column)))
    return SymbolTable(functions, frozenset(main_assigned), function_vars)


def _fn_error(fn: FunctionDef, message: str, code: str) -> CompileError:
    return CompileError("semantic", fn.line, fn.column, message, code)
