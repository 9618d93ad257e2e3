"""Text syntax for instruction sequences.

Grammar (whitespace is insignificant)::

    seq   := item (';' item)*
    item  := '(' seq ')' '*'     repetition
           | '(' seq ')'         grouping
           | '+' basic | '-' basic | basic | '#' N | '!'
    basic := NAME | OP ':' ARG ':' ARG [':' ARG]

A basic token containing ``:`` is an SRRAM instruction; a bare name is an
opaque instruction, bound to semantics through ``bindings`` if given.
"""

import re
from typing import Mapping, Optional

from .pga import (
    HALT,
    InstructionSequence,
    Jump,
    NegTest,
    Opaque,
    Plain,
    PosTest,
    concat,
)
from .srram import InstructionParseError, parse_instruction


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<jump>\#\d+)
  | (?P<basic>[A-Za-z_][A-Za-z0-9_]*(?::[^\s;()]*)*)
  | (?P<punct>[;()*!+-])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


def _tokens(text: str):
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = m.start() + chunk.rfind("\n") + 1
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, col)
        yield kind, m.group(), line, col
    yield "end", "", line, len(text) - line_start + 1


class _Parser:
    def __init__(self, text: str, bindings: Optional[Mapping[str, Opaque]]):
        self.toks = list(_tokens(text))
        self.i = 0
        self.bindings = bindings or {}

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message, tok=None):
        _, _, line, col = tok or self.tok
        raise ParseError(message, line, col)

    def take(self, value=None):
        tok = self.tok
        if value is not None and tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def sequence(self) -> InstructionSequence:
        result = self.item()
        while self.tok[1] == ";":
            self.take()
            result = concat(result, self.item())
        return result

    def item(self) -> InstructionSequence:
        kind, value, _, _ = self.tok
        if value == "(":
            self.take()
            inner = self.sequence()
            self.take(")")
            if self.tok[1] == "*":
                self.take()
                # keep the written period so that printing round-trips
                return inner if inner.period else InstructionSequence((), inner.prefix)
            return inner
        return InstructionSequence((self.primitive(),))

    def primitive(self):
        kind, value, _, _ = tok = self.take()
        if kind == "jump":
            return Jump(int(value[1:]))
        if value == "!":
            return HALT
        if value in ("+", "-"):
            basic = self.basic(self.take())
            return PosTest(basic) if value == "+" else NegTest(basic)
        if kind == "basic":
            return Plain(self.basic(tok))
        self.error(f"expected an instruction, found {value or 'end of input'!r}", tok)

    def basic(self, tok):
        kind, value, _, _ = tok
        if kind != "basic":
            self.error(f"expected a basic instruction, found {value or 'end of input'!r}", tok)
        if ":" in value:
            try:
                return parse_instruction(value)
            except InstructionParseError as exc:
                self.error(str(exc), tok)
        return self.bindings.get(value) or Opaque(value)


def parse_sequence(text: str, bindings: Optional[Mapping[str, Opaque]] = None) -> InstructionSequence:
    parser = _Parser(text, bindings)
    if parser.tok[0] == "end":
        parser.error("empty instruction sequence")
    result = parser.sequence()
    if parser.tok[0] != "end":
        parser.error(f"unexpected {parser.tok[1]!r}")
    return result


def format_instruction(u) -> str:
    return str(u)


def format_sequence(s: InstructionSequence) -> str:
    parts = [format_instruction(u) for u in s.prefix]
    if s.period:
        parts.append("(" + ";".join(format_instruction(u) for u in s.period) + ")*")
    return ";".join(parts)


__all__ = ["ParseError", "parse_sequence", "format_sequence", "format_instruction"]
