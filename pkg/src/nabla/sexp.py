"""Minimal s-expression reader and writer for model and derivation files."""

from __future__ import annotations

import re

__all__ = ["Quoted", "SexpError", "parse_sexp", "format_atom"]


class Quoted(str):
    """A string atom that was written in double quotes; remembers its source position."""

    line: int | None = None
    col: int | None = None


def _line_col(text: str, pos: int) -> tuple[int, int]:
    return text.count("\n", 0, pos) + 1, pos - (text.rfind("\n", 0, pos) + 1) + 1


class SexpError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        line, col = _line_col(text, pos)
        self.pos, self.line, self.col = pos, line, col
        super().__init__(f"{message} (line {line}, col {col})")


_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')


def parse_sexp(text: str) -> list:
    """All top-level forms; lists become Python lists, atoms strings."""
    stack: list[list] = [[]]
    opens: list[int] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SexpError("unterminated string", pos, text)
        tok = m.group()
        if tok[0].isspace() or tok[0] == ";":
            pass
        elif tok == "(":
            stack.append([])
            opens.append(pos)
        elif tok == ")":
            if len(stack) == 1:
                raise SexpError("unbalanced ')'", pos, text)
            done = stack.pop()
            opens.pop()
            stack[-1].append(done)
        elif tok[0] == '"':
            q = Quoted(re.sub(r"\\(.)", r"\1", tok[1:-1]))
            q.line, q.col = _line_col(text, pos)
            stack[-1].append(q)
        else:
            stack[-1].append(tok)
        pos = m.end()
    if len(stack) != 1:
        raise SexpError("missing ')'", opens[-1], text)
    return stack[0]


def format_atom(s: str) -> str:
    if isinstance(s, Quoted) or not s or re.search(r'[\s()";]', s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return s
