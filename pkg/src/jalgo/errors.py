"""Error types shared by the compile pipeline and the runtime."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CompileError:
    """One diagnostic from the lexer, parser, or analyzer."""

    phase: str  # "lexical" | "syntax" | "semantic"
    line: int
    column: int
    message: str
    code: str  # E-LEX-*, E-SYN-*, E-SEM-*

    def render(self) -> str:
        return f"{self.line}:{self.column}: {self.phase}: {self.message} [{self.code}]"


class CompileFailure(Exception):
    """Raised by a pipeline stage after collecting one or more CompileErrors."""

    def __init__(self, errors: list[CompileError]):
        super().__init__(f"{len(errors)} compile error(s)")
        self.errors = list(errors)


class RuntimeFault(Exception):
    """A language-level runtime error (R-1 .. R-9).

    `line` is 0 when the raising site does not know the source line; the
    interpreter fills in the line of the executing statement.
    """

    def __init__(self, code: str, message: str, line: int = 0):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.line = line
