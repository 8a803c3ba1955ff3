"""Recursive-descent parser building the abstract tree for jAlgo programs.

Grammar (EBNF):

    program    = { funcdef } "begin" stmts "end" EOF
    funcdef    = "function" IDENT "(" [ IDENT { "," IDENT } ] ")" stmts "end"
    stmts      = { stmt }
    stmt       = IDENT ":=" expr
               | "if" expr "then" stmts [ "else" stmts ] "end"
               | "while" expr "do" stmts "end"
               | "return" [ expr ]
               | IDENT "(" [ expr { "," expr } ] ")"
    expr       = orexpr ; orexpr = andexpr { "or" andexpr }
    andexpr    = notexpr { "and" notexpr } ; notexpr = [ "not" ] cmp
    cmp        = add [ ("="|"<>"|"<"|"<="|">"|">=") add ]
    add        = mul { ("+"|"-") mul } ; mul = unary { ("*"|"/"|"mod") unary }
    unary      = [ "-" ] primary
    primary    = INT | "true" | "false" | "nil" | IDENT
               | IDENT "(" [ expr { "," expr } ] ")" | "(" expr ")"

Comparison is non-associative: chaining like `a < b < c` is rejected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NoReturn, Optional, Union

from .errors import CompileError, CompileFailure
from .lexer import Token

# --- abstract tree ---------------------------------------------------------
# Positions never participate in equality, so structural comparison (and the
# print/parse round trip) ignores layout.


@dataclass(frozen=True)
class IntLit:
    value: int
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class BoolLit:
    value: bool
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class NilLit:
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "not" | "negate"
    operand: "Expr"
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Binary:
    op: str  # or and = <> < <= > >= + - * / mod
    left: "Expr"
    right: "Expr"
    line: int = field(compare=False)
    column: int = field(compare=False)


Expr = Union[IntLit, BoolLit, NilLit, Var, Call, Unary, Binary]


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class If:
    cond: Expr
    then: tuple["Stmt", ...]
    orelse: tuple["Stmt", ...]
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class While:
    cond: Expr
    body: tuple["Stmt", ...]
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class CallStmt:
    call: Call
    line: int = field(compare=False)
    column: int = field(compare=False)


Stmt = Union[Assign, If, While, Return, CallStmt]


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]
    line: int = field(compare=False)
    column: int = field(compare=False)


@dataclass(frozen=True)
class Program:
    functions: tuple[FunctionDef, ...]
    main: tuple[Stmt, ...]


# --- parsing ----------------------------------------------------------------

_CMP_OPS = ("EQ", "NE", "LT", "LE", "GT", "GE")
_EXPR_START_KINDS = ("INT", "IDENT", "LPAREN", "MINUS")
_EXPR_START_WORDS = ("true", "false", "nil", "not")
_SYNC_WORDS = ("if", "while", "return", "end", "else", "begin", "function")


def _describe(tok: Token) -> str:
    if tok.kind == "EOF":
        return "end of input"
    if tok.kind == "IDENT":
        return f"identifier '{tok.text}'"
    if tok.kind == "INT":
        return f"integer {tok.text}"
    return f"'{tok.text}'"


class _Panic(Exception):
    """Abandon the current statement and resynchronize."""


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[CompileError] = []

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_kw(self, word: str) -> bool:
        return self.cur.kind == "KEYWORD" and self.cur.text == word

    def take_kw(self, word: str) -> bool:
        if self.at_kw(word):
            self.advance()
            return True
        return False

    def error(self, message: str, code: str = "E-SYN-1") -> None:
        tok = self.cur
        self.errors.append(CompileError("syntax", tok.line, tok.column, message, code))

    def panic(self, message: str, code: str = "E-SYN-1") -> NoReturn:
        self.error(message, code)
        raise _Panic()

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind == kind:
            return self.advance()
        self.panic(f"expected {what}, found {_describe(self.cur)}")

    def expect_kw(self, word: str) -> Token:
        if self.at_kw(word):
            return self.advance()
        if word == "end" and self.cur.kind == "EOF":
            self.panic("missing 'end'", "E-SYN-3")
        self.panic(f"expected '{word}', found {_describe(self.cur)}")

    def synchronize(self) -> None:
        # Always make progress, then skip to a statement boundary.
        if self.cur.kind != "EOF":
            self.advance()
        while self.cur.kind != "EOF":
            if self.cur.kind == "IDENT":
                return
            if self.cur.kind == "KEYWORD" and self.cur.text in _SYNC_WORDS:
                return
            self.advance()

    # -- grammar --

    def program(self) -> Program:
        functions: list[FunctionDef] = []
        while self.at_kw("function"):
            try:
                functions.append(self.funcdef())
            except _Panic:
                self.synchronize()
        main: tuple[Stmt, ...] = ()
        try:
            self.expect_kw("begin")
            main = self.stmts()
            self.expect_kw("end")
        except _Panic:
            self.synchronize()
        if not self.errors and self.cur.kind != "EOF":
            self.error(f"expected end of input, found {_describe(self.cur)}")
        return Program(tuple(functions), main)

    def funcdef(self) -> FunctionDef:
        tok = self.advance()  # 'function'
        name = self.expect("IDENT", "a function name")
        self.expect("LPAREN", "'('")
        params: list[str] = []
        if self.cur.kind == "IDENT":
            params.append(self.advance().text)
            while self.cur.kind == "COMMA":
                self.advance()
                params.append(self.expect("IDENT", "a parameter name").text)
        self.expect("RPAREN", "')'")
        body = self.stmts()
        self.expect_kw("end")
        return FunctionDef(name.text, tuple(params), body, tok.line, tok.column)

    def stmts(self) -> tuple[Stmt, ...]:
        out: list[Stmt] = []
        while True:
            cur = self.cur
            if cur.kind == "EOF":
                break
            if cur.kind == "KEYWORD" and cur.text in ("end", "else"):
                break
            try:
                out.append(self.stmt())
            except _Panic:
                self.synchronize()
        return tuple(out)

    def stmt(self) -> Stmt:
        cur = self.cur
        if cur.kind == "IDENT":
            name = self.advance()
            if self.cur.kind == "ASSIGN":
                self.advance()
                value = self.expr()
                return Assign(name.text, value, name.line, name.column)
            if self.cur.kind == "LPAREN":
                call = self.call_tail(name)
                return CallStmt(call, name.line, name.column)
            self.panic(f"expected ':=' or '(' after identifier, found {_describe(self.cur)}")
        if self.at_kw("if"):
            tok = self.advance()
            cond = self.expr()
            self.expect_kw("then")
            then = self.stmts()
            orelse: tuple[Stmt, ...] = ()
            if self.take_kw("else"):
                orelse = self.stmts()
            self.expect_kw("end")
            return If(cond, then, orelse, tok.line, tok.column)
        if self.at_kw("while"):
            tok = self.advance()
            cond = self.expr()
            self.expect_kw("do")
            body = self.stmts()
            self.expect_kw("end")
            return While(cond, body, tok.line, tok.column)
        if self.at_kw("return"):
            tok = self.advance()
            value = self.expr() if self.starts_expr() else None
            return Return(value, tok.line, tok.column)
        self.panic(f"expected a statement, found {_describe(cur)}")

    def starts_expr(self) -> bool:
        cur = self.cur
        if cur.kind in _EXPR_START_KINDS:
            return True
        return cur.kind == "KEYWORD" and cur.text in _EXPR_START_WORDS

    def expr(self) -> Expr:
        return self.or_expr()

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.at_kw("or"):
            self.advance()
            right = self.and_expr()
            left = Binary("or", left, right, left.line, left.column)
        return left

    def and_expr(self) -> Expr:
        left = self.not_expr()
        while self.at_kw("and"):
            self.advance()
            right = self.not_expr()
            left = Binary("and", left, right, left.line, left.column)
        return left

    def not_expr(self) -> Expr:
        if self.at_kw("not"):
            tok = self.advance()
            operand = self.cmp_expr()
            return Unary("not", operand, tok.line, tok.column)
        return self.cmp_expr()

    def cmp_expr(self) -> Expr:
        left = self.add_expr()
        if self.cur.kind not in _CMP_OPS:
            return left
        op = self.advance()
        right = self.add_expr()
        result = Binary(op.text, left, right, left.line, left.column)
        if self.cur.kind in _CMP_OPS:
            # Consume the whole chain so parsing can continue past it.
            self.error("comparison operators cannot be chained", "E-SYN-2")
            while self.cur.kind in _CMP_OPS:
                self.advance()
                self.add_expr()
        return result

    def add_expr(self) -> Expr:
        left = self.mul_expr()
        while self.cur.kind in ("PLUS", "MINUS"):
            op = self.advance()
            right = self.mul_expr()
            left = Binary(op.text, left, right, left.line, left.column)
        return left

    def mul_expr(self) -> Expr:
        left = self.unary_expr()
        while self.cur.kind in ("STAR", "SLASH") or self.at_kw("mod"):
            op = self.advance()
            right = self.unary_expr()
            left = Binary(op.text, left, right, left.line, left.column)
        return left

    def unary_expr(self) -> Expr:
        if self.cur.kind == "MINUS":
            tok = self.advance()
            operand = self.primary()
            return Unary("negate", operand, tok.line, tok.column)
        return self.primary()

    def primary(self) -> Expr:
        cur = self.cur
        if cur.kind == "INT":
            self.advance()
            return IntLit(int(cur.text), cur.line, cur.column)
        if cur.kind == "KEYWORD" and cur.text in ("true", "false"):
            self.advance()
            return BoolLit(cur.text == "true", cur.line, cur.column)
        if self.at_kw("nil"):
            self.advance()
            return NilLit(cur.line, cur.column)
        if cur.kind == "IDENT":
            self.advance()
            if self.cur.kind == "LPAREN":
                return self.call_tail(cur)
            return Var(cur.text, cur.line, cur.column)
        if cur.kind == "LPAREN":
            self.advance()
            inner = self.expr()
            self.expect("RPAREN", "')'")
            return inner
        self.panic(f"expected an expression, found {_describe(cur)}")

    def call_tail(self, name: Token) -> Call:
        self.expect("LPAREN", "'('")
        args: list[Expr] = []
        if self.cur.kind != "RPAREN":
            args.append(self.expr())
            while self.cur.kind == "COMMA":
                self.advance()
                args.append(self.expr())
        self.expect("RPAREN", "')' or ','")
        return Call(name.text, tuple(args), name.line, name.column)


def parse(tokens: list[Token]) -> Program:
    """Parse a token stream into a Program.

    Raises CompileFailure carrying every syntax error found; the parser
    resynchronizes at statement boundaries to report more than one.
    """
    p = _Parser(tokens)
    program = p.program()
    if p.errors:
        raise CompileFailure(sorted(p.errors, key=lambda e: (e.line, e.column)))
    return program


# --- pretty printer ---------------------------------------------------------


def to_source(program: Program) -> str:
    """Render a Program back to canonical jAlgo source.

    Compound expressions are fully parenthesized, so reparsing the output
    yields a structurally equal Program.
    """
    lines: list[str] = []
    for fn in program.functions:
        lines.append(f"function {fn.name}({', '.join(fn.params)})")
        _stmt_lines(fn.body, 1, lines)
        lines.append("end")
    lines.append("begin")
    _stmt_lines(program.main, 1, lines)
    lines.append("end")
    return "\n".join(lines) + "\n"


def _stmt_lines(stmts: tuple[Stmt, ...], depth: int, out: list[str]) -> None:
    pad = "  " * depth
    for st in stmts:
        if isinstance(st, Assign):
            out.append(f"{pad}{st.target} := {expr_source(st.value)}")
        elif isinstance(st, CallStmt):
            out.append(pad + expr_source(st.call))
        elif isinstance(st, Return):
            out.append(pad + ("return" if st.value is None else f"return {expr_source(st.value)}"))
        elif isinstance(st, If):
            out.append(f"{pad}if {expr_source(st.cond)} then")
            _stmt_lines(st.then, depth + 1, out)
            if st.orelse:
                out.append(pad + "else")
                _stmt_lines(st.orelse, depth + 1, out)
            out.append(pad + "end")
        elif isinstance(st, While):
            out.append(f"{pad}while {expr_source(st.cond)} do")
            _stmt_lines(st.body, depth + 1, out)
            out.append(pad + "end")
        else:
            raise TypeError(f"unknown statement {st!r}")


def expr_source(e: Expr) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, NilLit):
        return "nil"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.name}({', '.join(expr_source(a) for a in e.args)})"
    if isinstance(e, Unary):
        inner = expr_source(e.operand)
        return f"(not {inner})" if e.op == "not" else f"(-{inner})"
    if isinstance(e, Binary):
        return f"({expr_source(e.left)} {e.op} {expr_source(e.right)})"
    raise TypeError(f"unknown expression {e!r}")
