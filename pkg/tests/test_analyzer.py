from __future__ import annotations

import pytest

from jalgo import compile_source
from jalgo.analyzer import BUILTINS, analyze
from jalgo.errors import CompileFailure
from jalgo.lexer import tokenize
from jalgo.parser import parse


def analyze_src(source):
    return analyze(parse(tokenize(source)))


def errors_of(source):
    with pytest.raises(CompileFailure) as exc:
        analyze_src(source)
    return exc.value.errors


def test_unknown_function_at_call_site():
    (err,) = errors_of("begin\n f()\nend")
    assert (err.code, err.line, err.column) == ("E-SEM-1", 2, 2)


def test_arity_mismatch():
    (err,) = errors_of("function g(a) return a end begin x := g(1, 2) end")
    assert err.code == "E-SEM-2"
    assert "expects 1 argument(s), got 2" in err.message


def test_recursive_function_is_legal_and_table_populated():
    table = analyze_src(
        "function fact(n) if n <= 1 then return 1 end return n * fact(n - 1) end "
        "begin x := fact(3) end")
    assert table.functions["fact"].arity == 1
    assert not table.functions["fact"].is_builtin
    for name, arity in BUILTINS.items():
        assert table.functions[name].arity == arity
        assert table.functions[name].is_builtin
    assert table.main_vars == frozenset({"x"})
    assert table.function_vars["fact"] == frozenset({"n"})


def test_builtin_shadow_rejected():
    (err,) = errors_of("function left(a) return a end begin end")
    assert err.code == "E-SEM-6"


def test_duplicate_function_name():
    (err,) = errors_of("function f() return 1 end function f() return 2 end begin end")
    assert err.code == "E-SEM-3"


def test_duplicate_parameter():
    (err,) = errors_of("function f(a, a) return a end begin end")
    assert err.code == "E-SEM-4"


def test_return_in_main_rejected():
    (err,) = errors_of("begin return 1 end")
    assert err.code == "E-SEM-5"


def test_assignment_colliding_with_function_names():
    (err,) = errors_of("function f() return 1 end begin f := 2 end")
    assert err.code == "E-SEM-7"
    (err,) = errors_of("begin print := 5 end")
    assert err.code == "E-SEM-7"


def test_errors_are_collected_not_fail_fast():
    errs = errors_of("begin\n g()\n x := h(1)\n return\nend")
    assert [e.code for e in errs] == ["E-SEM-1", "E-SEM-1", "E-SEM-5"]


def test_calls_checked_inside_nested_blocks_and_args():
    errs = errors_of(
        "begin\n if true then\n  while false do\n   x := 1 + missing(2)\n  end\n end\nend")
    assert [e.code for e in errs] == ["E-SEM-1"]
    assert errs[0].line == 4


def test_scopes_are_flat_and_separate():
    table = analyze_src(
        "function f(a) b := a return b end begin c := 1 d := f(c) end")
    assert table.function_vars["f"] == frozenset({"a", "b"})
    assert table.main_vars == frozenset({"c", "d"})


def test_use_before_assignment_is_not_static():
    # deliberately dynamic (runtime R-1), so this must analyze cleanly
    table = analyze_src("begin x := y end")
    assert table.main_vars == frozenset({"x"})


def test_analyze_is_deterministic_and_pure():
    program = parse(tokenize("function f(a) return a end begin x := f(1) end"))
    first = analyze(program)
    second = analyze(program)
    assert first == second


def test_compile_source_pipeline_stops_at_first_failing_phase():
    with pytest.raises(CompileFailure) as exc:
        compile_source("begin @ end")
    assert all(e.phase == "lexical" for e in exc.value.errors)
    with pytest.raises(CompileFailure) as exc:
        compile_source("begin x := end")
    assert all(e.phase == "syntax" for e in exc.value.errors)
    with pytest.raises(CompileFailure) as exc:
        compile_source("begin f() end")
    assert all(e.phase == "semantic" for e in exc.value.errors)
