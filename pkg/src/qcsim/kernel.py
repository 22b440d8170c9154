"""Parser for the ``__qpu__`` quantum kernel source dialect.

Accepted form::

    __qpu__ void <name>(qbit <reg>[, double <var>]*) {
      <Gate>(<reg>[<idx>][, <reg>[<idx>]][, <angle>]);
      ...
    }

where ``<angle>`` is a real literal, a declared variable, or a scaled
variable ``<real>*<var>`` with optional leading sign.  Errors carry the
offending line and column.
"""
from __future__ import annotations

import re

from .errors import KernelParseError
from .ir import GATE_TABLE, CompositeInstruction, Parameter, create_instruction

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<sym>__qpu__|[(){}\[\],;*+-])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise KernelParseError(f"unexpected character {source[pos]!r}", line, col)
        text = m.group(0)
        if m.lastgroup != "ws":
            kind = m.lastgroup
            if text == "__qpu__":
                kind = "sym"
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str, what: str | None = None) -> _Token:
        tok = self.next()
        if tok.text != text:
            want = what or f"'{text}'"
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise KernelParseError(f"expected {want}, got {got}", tok.line, tok.column)
        return tok

    def expect_ident(self, what: str) -> _Token:
        tok = self.next()
        if tok.kind != "ident":
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise KernelParseError(f"expected {what}, got {got}", tok.line, tok.column)
        return tok

    def parse(self) -> CompositeInstruction:
        self.expect("__qpu__")
        ret = self.expect_ident("return type 'void'")
        if ret.text != "void":
            raise KernelParseError(
                f"expected 'void', got {ret.text!r}", ret.line, ret.column
            )
        name = self.expect_ident("kernel name").text
        self.expect("(")
        qbit = self.expect_ident("'qbit'")
        if qbit.text != "qbit":
            raise KernelParseError(
                f"expected 'qbit', got {qbit.text!r}", qbit.line, qbit.column
            )
        reg = self.expect_ident("register name").text
        variables: list[str] = []
        while self.peek().text == ",":
            self.next()
            kw = self.expect_ident("'double'")
            if kw.text != "double":
                raise KernelParseError(
                    f"expected 'double', got {kw.text!r}", kw.line, kw.column
                )
            var = self.expect_ident("variable name")
            if var.text in variables or var.text == reg:
                raise KernelParseError(
                    f"duplicate parameter name '{var.text}'", var.line, var.column
                )
            variables.append(var.text)
        self.expect(")")
        self.expect("{")

        composite = CompositeInstruction(name)
        while self.peek().text != "}":
            if self.peek().kind == "eof":
                tok = self.peek()
                raise KernelParseError("unterminated kernel body", tok.line, tok.column)
            composite.add(self.parse_statement(reg, variables))
        self.expect("}")
        tail = self.peek()
        if tail.kind != "eof":
            raise KernelParseError(
                f"trailing input {tail.text!r}", tail.line, tail.column
            )
        # declared-but-unused variables still belong to the signature
        composite.variables = list(variables)
        return composite

    def parse_statement(self, reg: str, variables: list[str]):
        gate_tok = self.expect_ident("gate name")
        gate = gate_tok.text
        if gate not in GATE_TABLE:
            raise KernelParseError(
                f"unknown gate '{gate}'", gate_tok.line, gate_tok.column
            )
        self.expect("(")
        nq, np_ = GATE_TABLE[gate]
        qubits = [self.parse_qubit(reg)]
        for _ in range(nq - 1):
            self.expect(",")
            qubits.append(self.parse_qubit(reg))
        params = []
        for _ in range(np_):
            self.expect(",")
            params.append(self.parse_angle(variables))
        close = self.next()
        if close.text != ")":
            raise KernelParseError(
                f"wrong argument count for {gate}", close.line, close.column
            )
        self.expect(";")
        try:
            return create_instruction(gate, qubits, params)
        except Exception as exc:
            raise KernelParseError(str(exc), gate_tok.line, gate_tok.column) from None

    def parse_qubit(self, reg: str) -> int:
        tok = self.expect_ident("register reference")
        if tok.text != reg:
            raise KernelParseError(
                f"unknown register '{tok.text}' (declared '{reg}')",
                tok.line,
                tok.column,
            )
        self.expect("[")
        idx = self.next()
        if idx.kind != "number" or not re.fullmatch(r"\d+", idx.text):
            raise KernelParseError(
                f"expected qubit index, got {idx.text!r}", idx.line, idx.column
            )
        self.expect("]")
        return int(idx.text)

    def parse_angle(self, variables: list[str]) -> Parameter:
        tok = self.next()
        sign = 1.0
        if tok.text in ("+", "-"):
            # sign shows up as part of a number token normally; a bare
            # sign can only precede a variable
            sign = -1.0 if tok.text == "-" else 1.0
            tok = self.next()
        if tok.kind == "number":
            value = float(tok.text)
            if self.peek().text == "*":
                self.next()
                var = self.expect_ident("variable name")
                if var.text not in variables:
                    raise KernelParseError(
                        f"undeclared variable '{var.text}'", var.line, var.column
                    )
                return Parameter.symbolic(var.text, sign * value)
            return Parameter.concrete(sign * value)
        if tok.kind == "ident":
            if tok.text not in variables:
                raise KernelParseError(
                    f"undeclared variable '{tok.text}'", tok.line, tok.column
                )
            return Parameter.symbolic(tok.text, sign)
        raise KernelParseError(
            f"expected angle expression, got {tok.text!r}", tok.line, tok.column
        )


def parse_kernel(source: str) -> CompositeInstruction:
    """Parse kernel source into a flat CompositeInstruction."""
    return _Parser(source).parse()
