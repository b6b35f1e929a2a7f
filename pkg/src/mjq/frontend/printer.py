"""Concrete-syntax printer.

Parentheses are emitted only where the tree cannot be read back otherwise, so
printing a parsed program and parsing the text again gives an equal tree.
Lowered trees print too; their helper variables (``$x!3``) are not
re-parseable by design.
"""

from __future__ import annotations

import json
import math
import re

from mjq.frontend import syntax as s
from mjq.frontend.parser import RIGHT_ASSOC

# binding strength; larger binds tighter
PIPE, COMMA, GROUP_R, GROUP_L, EQ, REL, ADD, MUL, REM, POSTFIX = (
    1, 2, 3, 3.5, 4, 5, 6, 7, 8, 9,
)

_CART_LEVEL = {
    "==": EQ, "!=": EQ,
    "<": REL, "<=": REL, ">": REL, ">=": REL,
    "+": ADD, "-": ADD,
    "*": MUL, "/": MUL,
    "%": REM,
}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# forms that swallow everything to their right
_OPEN = (s.BindAs, s.Label)


def number(n) -> str:
    if type(n) is int:
        return str(n)
    if math.isinf(n):
        return "1e1000" if n > 0 else "-1e1000"
    return repr(n)


def _level(node) -> float:
    t = type(node)
    if t is s.Pipe:
        return PIPE
    if t is s.Comma:
        return COMMA
    if t in (s.Update, s.Assign):
        return GROUP_R
    if t is s.OpUpdate:
        return GROUP_R if node.op + "=" in RIGHT_ASSOC else GROUP_L
    if t in (s.Alt, s.And, s.Or):
        return GROUP_L
    if t is s.Cartesian:
        return _CART_LEVEL[node.op]
    return POSTFIX


class Printer:
    def __init__(self, params: tuple = ()):
        self.params = params

    def show(self, node, need: float = PIPE, tail: bool = True, no_comma: bool = False) -> str:
        """Print ``node`` where the context requires strength ``need``.

        ``tail`` says nothing follows before a closing bracket; ``no_comma``
        says a bare comma would end the enclosing construct.
        """
        t = type(node)
        wrap = _level(node) < need or (t in _OPEN and not tail) or (t is s.Comma and no_comma)
        if wrap:
            return "(" + self.show(node, PIPE, True, False) + ")"
        return getattr(self, "_" + t.__name__)(node, tail, no_comma)

    def inner(self, node) -> str:
        return self.show(node, PIPE, True, False)

    # leaves

    def _Num(self, node, tail, nc):
        return number(node.value)

    def _Str(self, node, tail, nc):
        return json.dumps(node.value, ensure_ascii=False)

    def _Identity(self, node, tail, nc):
        return "."

    def _Var(self, node, tail, nc):
        return "$" + node.name

    def _Break(self, node, tail, nc):
        return "break $" + node.name

    def _CallArg(self, node, tail, nc):
        return node.name

    def _Iterate(self, node, tail, nc):
        return ".[]"

    def _Index(self, node, tail, nc):
        return f".[${node.var}]"

    def _Slice(self, node, tail, nc):
        return f".[${node.start}:${node.end}]"

    # brackets

    def _Paren(self, node, tail, nc):
        return "(" + self.inner(node.body) + ")"

    def _ArrayCtor(self, node, tail, nc):
        return "[]" if node.body is None else "[" + self.inner(node.body) + "]"

    def _ObjectCtor(self, node, tail, nc):
        entries = []
        for k, v in node.entries:
            if type(k) is s.Str:
                key = self._Str(k, True, False)
            elif type(k) is s.Var:
                key = self._Var(k, True, False)
            elif type(k) is s.Paren:
                key = self._Paren(k, True, False)
            else:
                key = "(" + self.inner(k) + ")"
            entries.append(f"{key}: {self.show(v, PIPE, True, True)}")
        return "{" + ", ".join(entries) + "}"

    # postfix

    def _operand(self, node) -> str:
        """A postfix term in front of ``as`` or inside ``try``/``catch``."""
        return self.show(node, POSTFIX, False, False)

    def _target(self, node) -> str:
        """A term that path parts or ``?`` get appended to."""
        # a catch handler or an earlier path would absorb the suffix
        if type(node) in (s.Path, s.TryCatch):
            return "(" + self.inner(node) + ")"
        return self._operand(node)

    def _part(self, part, dotted: bool) -> str:
        t = type(part)
        if t is s.All:
            return "[]"
        if t is s.At:
            if dotted and type(part.index) is s.Str and _IDENT.match(part.index.value):
                return "." + part.index.value
            return "[" + self.inner(part.index) + "]"
        if t is s.From:
            return "[" + self.inner(part.start) + ":]"
        if t is s.Until:
            return "[:" + self.inner(part.end) + "]"
        return "[" + self.inner(part.start) + ":" + self.inner(part.end) + "]"

    def _Path(self, node, tail, nc):
        identity = type(node.target) is s.Identity
        out = "" if identity else self._target(node.target)
        for i, (part, optional) in enumerate(node.parts):
            text = self._part(part, identity or i > 0)
            if i == 0 and identity and not text.startswith("."):
                text = "." + text
            out += text + ("?" if optional else "")
        return out

    def _TryShorthand(self, node, tail, nc):
        body = node.body
        if type(body) is s.Path and body.parts[-1][1]:
            return self._Path(body, False, False) + "?"
        if type(body) is s.Identity:
            return ".?"
        return self._target(body) + "?"

    # binary

    def _binary(self, symbol, left, right, left_need, right_need, tail, nc):
        lhs = self.show(left, left_need, False, nc)
        rhs = self.show(right, right_need, tail, nc)
        return f"{lhs} {symbol} {rhs}"

    def _Pipe(self, node, tail, nc):
        return self._binary("|", node.left, node.right, COMMA, PIPE, tail, nc)

    def _Comma(self, node, tail, nc):
        lhs = self.show(node.left, COMMA, False, nc)
        return lhs + ", " + self.show(node.right, GROUP_R, tail, nc)

    def _group(self, node, symbol, tail, nc):
        right_need = GROUP_R if _level(node) == GROUP_R else EQ
        return self._binary(symbol, node.left, node.right, GROUP_L, right_need, tail, nc)

    def _Update(self, node, tail, nc):
        return self._group(node, "|=", tail, nc)

    def _Assign(self, node, tail, nc):
        return self._group(node, "=", tail, nc)

    def _OpUpdate(self, node, tail, nc):
        return self._group(node, node.op + "=", tail, nc)

    def _Alt(self, node, tail, nc):
        return self._group(node, "//", tail, nc)

    def _And(self, node, tail, nc):
        return self._group(node, "and", tail, nc)

    def _Or(self, node, tail, nc):
        return self._group(node, "or", tail, nc)

    def _Cartesian(self, node, tail, nc):
        level = _CART_LEVEL[node.op]
        return self._binary(node.op, node.left, node.right, level, level + 1, tail, nc)

    # keyword forms

    def _BindAs(self, node, tail, nc):
        return f"{self._operand(node.source)} as ${node.var} | {self.show(node.body, PIPE, True, nc)}"

    def _Label(self, node, tail, nc):
        return f"label ${node.name} | {self.show(node.body, PIPE, True, nc)}"

    def _Fold(self, node, tail, nc):
        return f"{node.kind} {self._operand(node.source)} as ${node.var} ({self.inner(node.init)}; {self.inner(node.step)})"

    def _If(self, node, tail, nc):
        return (
            f"if {self.inner(node.cond)} then {self.inner(node.then)} "
            f"else {self.inner(node.else_)} end"
        )

    def _TryCatch(self, node, tail, nc):
        return f"try {self._operand(node.body)} catch {self._operand(node.handler)}"

    def _Call(self, node, tail, nc):
        if not node.args:
            return node.name + "()" if node.name in self.params else node.name
        return node.name + "(" + "; ".join(self.inner(a) for a in node.args) + ")"


def print_filter(node: s.Node, params: tuple = ()) -> str:
    return Printer(params).inner(node)


def print_definition(d: s.Definition) -> str:
    head = d.name
    if d.params:
        head += "(" + "; ".join(d.params) + ")"
    return f"def {head}: {Printer(d.params).inner(d.body)};"


def print_program(program: s.Program) -> str:
    lines = [print_definition(d) for d in program.defs]
    lines.append(print_filter(program.main))
    return "\n".join(lines)
