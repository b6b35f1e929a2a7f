"""Lexer and recursive-descent parser for the supported jq subset.

Operator levels, loosest first::

    |                                   right
    ,                                   left
    = |= op= //= // or and              one level; = |= op= right, rest left
    == !=                               left
    < <= > >=                           left
    + -                                 left
    * /                                 left
    %                                   left
    postfix: f[..]  f.name  f?          (f as $x | g binds after a postfix term)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mjq.frontend import syntax as s

KEYWORDS = frozenset(
    "def if then else end as reduce foreach try catch label and or".split()
)

# longest first
_PUNCT = (
    "//=",
    "|=", "+=", "-=", "*=", "/=", "%=", "//", "==", "!=", "<=", ">=", "..",
    "<", ">", "=", "|", ",", "+", "-", "*", "/", "%",
    "(", ")", "[", "]", "{", "}", ":", ";", "?", ".",
)

# candidates per first character, longest first
_PUNCT_BY_CHAR: dict = {}
for _p in _PUNCT:
    _PUNCT_BY_CHAR.setdefault(_p[0], []).append(_p)

_ESCAPES = {'"': '"', "\\": "\\", "/": "/", "b": "\b", "f": "\f", "n": "\n", "r": "\r", "t": "\t"}

DIGITS = "0123456789"

RIGHT_ASSOC = frozenset({"=", "|=", "+=", "-=", "*=", "/=", "%="})
GROUP_OPS = RIGHT_ASSOC | {"//=", "//", "or", "and"}


@dataclass
class Token:
    kind: str  # NUM STR IDENT KW VAR FIELD PUNCT EOF
    value: object
    pos: int

    def show(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        if self.kind in ("PUNCT", "KW"):
            return f"'{self.value}'"
        if self.kind == "VAR":
            return f"variable ${self.value}"
        if self.kind == "FIELD":
            return f"field .{self.value}"
        if self.kind == "STR":
            return "string literal"
        if self.kind == "NUM":
            return f"number {self.value}"
        return f"identifier {self.value}"


@dataclass
class ParseError(Exception):
    message: str
    pos: int
    text: str = ""
    expected: tuple = field(default=())

    def __post_init__(self):
        Exception.__init__(self, self.message)

    @property
    def line(self) -> int:
        return self.text.count("\n", 0, self.pos) + 1

    @property
    def column(self) -> int:
        return self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1

    def render(self, origin: str = "<program>") -> str:
        start = self.text.rfind("\n", 0, self.pos) + 1
        end = self.text.find("\n", self.pos)
        if end < 0:
            end = len(self.text)
        excerpt = self.text[start:end]
        caret = " " * (self.column - 1) + "^"
        return f"{origin}:{self.line}:{self.column}: {self.message}\n  {excerpt}\n  {caret}"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


def _is_ident_start(c: str) -> bool:
    return c.isascii() and (c.isalpha() or c == "_")


def _is_ident_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


def _read_ident(text: str, i: int) -> int:
    while i < len(text) and _is_ident_char(text[i]):
        i += 1
    return i


def _read_string(text: str, i: int) -> tuple:
    """Decode the string literal opening at ``text[i]``; return (value, end)."""
    start = i
    i += 1
    out = []
    while True:
        if i >= len(text):
            raise ParseError("unterminated string literal", start, text)
        c = text[i]
        if c == '"':
            return "".join(out), i + 1
        if c == "\\":
            if i + 1 >= len(text):
                raise ParseError("unterminated string literal", start, text)
            e = text[i + 1]
            if e in _ESCAPES:
                out.append(_ESCAPES[e])
                i += 2
            elif e == "u":
                code, i = _read_u(text, i)
                if 0xD800 <= code < 0xDC00 and text.startswith("\\u", i):
                    low, j = _read_u(text, i)
                    if 0xDC00 <= low < 0xE000:
                        code = 0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00)
                        i = j
                out.append(chr(code))
            elif e == "(":
                raise ParseError("string interpolation is not supported", i, text)
            else:
                raise ParseError(f"invalid escape '\\{e}'", i, text)
        elif ord(c) < 0x20:
            raise ParseError("control character in string literal", i, text)
        else:
            out.append(c)
            i += 1


def _read_u(text: str, i: int) -> tuple:
    digits = text[i + 2 : i + 6]
    if len(digits) != 4 or any(d not in "0123456789abcdefABCDEF" for d in digits):
        raise ParseError("invalid \\u escape", i, text)
    return int(digits, 16), i + 6


def _read_number(text: str, i: int) -> tuple:
    j = i
    while j < len(text) and text[j] in DIGITS:
        j += 1
    is_int = True
    if j < len(text) and text[j] == "." and j + 1 < len(text) and text[j + 1] in DIGITS:
        is_int = False
        j += 1
        while j < len(text) and text[j] in DIGITS:
            j += 1
    if j < len(text) and text[j] in "eE":
        k = j + 1
        if k < len(text) and text[k] in "+-":
            k += 1
        if k < len(text) and text[k] in DIGITS:
            is_int = False
            j = k
            while j < len(text) and text[j] in DIGITS:
                j += 1
    lit = text[i:j]
    if is_int:
        n = int(lit)
        if n <= 2**63 - 1:
            return n, j
    return float(lit), j


def tokenize(text: str) -> list:
    tokens = []
    i = 0
    n = len(text)
    while True:
        while i < n:
            c = text[i]
            if c in " \t\r\n":
                i += 1
            elif c == "#":
                while i < n and text[i] != "\n":
                    i += 1
            else:
                break
        if i >= n:
            tokens.append(Token("EOF", None, i))
            return tokens
        c = text[i]
        if c == '"':
            value, j = _read_string(text, i)
            tokens.append(Token("STR", value, i))
        elif c in DIGITS:
            value, j = _read_number(text, i)
            tokens.append(Token("NUM", value, i))
        elif c == "$":
            if i + 1 >= n or not _is_ident_start(text[i + 1]):
                raise ParseError("expected variable name after '$'", i, text)
            j = _read_ident(text, i + 1)
            tokens.append(Token("VAR", text[i + 1 : j], i))
        elif c == "." and i + 1 < n and _is_ident_start(text[i + 1]):
            j = _read_ident(text, i + 1)
            tokens.append(Token("FIELD", text[i + 1 : j], i))
        elif _is_ident_start(c):
            j = _read_ident(text, i)
            word = text[i:j]
            tokens.append(Token("KW" if word in KEYWORDS else "IDENT", word, i))
        else:
            for p in _PUNCT_BY_CHAR.get(c, ()):
                if text.startswith(p, i):
                    tokens.append(Token("PUNCT", p, i))
                    j = i + len(p)
                    break
            else:
                raise ParseError(f"unexpected character {c!r}", i, text)
        i = j


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.params: tuple = ()
        self.no_comma = False

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, *values) -> bool:
        t = self.tok
        return t.kind in ("PUNCT", "KW") and t.value in values

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, *expected) -> ParseError:
        t = self.tok
        want = " or ".join(expected) if expected else "something else"
        return ParseError(f"expected {want}, found {t.show()}", t.pos, self.text, tuple(expected))

    def expect(self, value: str) -> Token:
        if not self.at(value):
            raise self.error(f"'{value}'")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise self.error(what)
        return self.advance()

    def nested(self, fn, *args):
        """Run ``fn`` with commas re-enabled (inside brackets)."""
        saved = self.no_comma
        self.no_comma = False
        try:
            return fn(*args)
        finally:
            self.no_comma = saved

    # -- program

    def program(self) -> s.Program:
        defs = []
        while self.at("def"):
            defs.append(self.definition())
        main = self.pipe()
        if self.tok.kind != "EOF":
            raise self.error("end of input")
        return s.Program(tuple(defs), main)

    def definition(self) -> s.Definition:
        pos = self.advance().pos
        name = self.expect_kind("IDENT", "definition name").value
        params = []
        if self.at("("):
            self.advance()
            params.append(self.expect_kind("IDENT", "parameter name").value)
            while self.at(";"):
                self.advance()
                params.append(self.expect_kind("IDENT", "parameter name").value)
            self.expect(")")
        self.expect(":")
        saved = self.params
        self.params = tuple(params)
        try:
            body = self.pipe()
        finally:
            self.params = saved
        self.expect(";")
        return s.Definition(name, tuple(params), body, pos)

    # -- operator levels

    def pipe(self) -> s.Node:
        if self.at("def"):
            raise ParseError("nested definitions are not supported", self.tok.pos, self.text)
        left = self.comma()
        if self.at("|"):
            pos = self.advance().pos
            return s.Pipe(left, self.pipe(), pos)
        return left

    def comma(self) -> s.Node:
        left = self.group()
        while not self.no_comma and self.at(","):
            pos = self.advance().pos
            left = s.Comma(left, self.group(), pos)
        return left

    def group(self) -> s.Node:
        left = self.equality()
        while self.tok.kind in ("PUNCT", "KW") and self.tok.value in GROUP_OPS:
            t = self.advance()
            op = t.value
            if op in RIGHT_ASSOC:
                return _group_node(op, left, self.group(), t.pos)
            left = _group_node(op, left, self.equality(), t.pos)
        return left

    def _binary(self, ops, operand):
        left = operand()
        while self.tok.kind == "PUNCT" and self.tok.value in ops:
            t = self.advance()
            left = s.Cartesian(t.value, left, operand(), t.pos)
        return left

    def equality(self) -> s.Node:
        return self._binary(("==", "!="), self.relational)

    def relational(self) -> s.Node:
        return self._binary(("<", "<=", ">", ">="), self.additive)

    def additive(self) -> s.Node:
        return self._binary(("+", "-"), self.multiplicative)

    def multiplicative(self) -> s.Node:
        return self._binary(("*", "/"), self.remainder)

    def remainder(self) -> s.Node:
        return self._binary(("%",), self.postfix_as)

    # -- terms

    def postfix_as(self) -> s.Node:
        term = self.postfix()
        if self.at("as"):
            pos = self.advance().pos
            var = self.expect_kind("VAR", "variable").value
            self.expect("|")
            return s.BindAs(term, var, self.pipe(), pos)
        return term

    def postfix(self) -> s.Node:
        term = self.primary()
        parts: list = []
        while True:
            t = self.tok
            if t.kind == "FIELD":
                self.advance()
                parts.append((s.At(s.Str(t.value, t.pos), t.pos), False))
            elif self.at(".") and self.tokens[self.i + 1].kind == "STR":
                self.advance()
                st = self.advance()
                parts.append((s.At(s.Str(st.value, st.pos), t.pos), False))
            elif self.at(".") and self.tokens[self.i + 1].kind == "PUNCT" and self.tokens[self.i + 1].value == "[":
                self.advance()
                parts.append((self.nested(self.path_part), False))
            elif self.at("["):
                parts.append((self.nested(self.path_part), False))
            elif self.at("?"):
                self.advance()
                if parts and not parts[-1][1]:
                    parts[-1] = (parts[-1][0], True)
                else:
                    if parts:
                        term = s.Path(term, tuple(parts), term.pos)
                        parts = []
                    term = s.TryShorthand(term, t.pos)
            else:
                break
        if parts:
            term = s.Path(term, tuple(parts), term.pos)
        return term

    def path_part(self):
        pos = self.expect("[").pos
        if self.at("]"):
            self.advance()
            return s.All(pos)
        if self.at(":"):
            self.advance()
            end = self.pipe()
            self.expect("]")
            return s.Until(end, pos)
        start = self.pipe()
        if self.at(":"):
            self.advance()
            if self.at("]"):
                self.advance()
                return s.From(start, pos)
            end = self.pipe()
            self.expect("]")
            return s.Range(start, end, pos)
        self.expect("]")
        return s.At(start, pos)

    def primary(self) -> s.Node:
        t = self.tok
        k, v = t.kind, t.value
        if k == "NUM":
            self.advance()
            return s.Num(v, t.pos)
        if k == "STR":
            self.advance()
            return s.Str(v, t.pos)
        if k == "VAR":
            self.advance()
            return s.Var(v, t.pos)
        if k == "FIELD":
            # leave the field for postfix()
            return s.Identity(t.pos)
        if k == "IDENT":
            return self.call()
        if k == "PUNCT":
            if v == ".":
                if self.tokens[self.i + 1].kind == "STR":
                    # leave ."name" for postfix()
                    return s.Identity(t.pos)
                self.advance()
                return s.Identity(t.pos)
            if v == "..":
                self.advance()
                return s.Call("recurse", (), t.pos)
            if v == "(":
                self.advance()
                body = self.nested(self.pipe)
                self.expect(")")
                return s.Paren(body, t.pos)
            if v == "[":
                self.advance()
                if self.at("]"):
                    self.advance()
                    return s.ArrayCtor(None, t.pos)
                body = self.nested(self.pipe)
                self.expect("]")
                return s.ArrayCtor(body, t.pos)
            if v == "{":
                return self.nested(self.object)
            if v == "-" and self.tokens[self.i + 1].kind == "NUM":
                self.advance()
                n = self.advance().value
                return s.Num(-n, t.pos)
        if k == "KW":
            if v == "if":
                return self.if_()
            if v == "try":
                self.advance()
                body = self.postfix()
                if self.at("catch"):
                    self.advance()
                    handler = self.postfix()
                else:
                    handler = s.Call("empty", (), t.pos)
                return s.TryCatch(body, handler, t.pos)
            if v in ("reduce", "foreach"):
                return self.fold()
            if v == "label":
                self.advance()
                name = self.expect_kind("VAR", "label variable").value
                self.expect("|")
                return s.Label(name, self.pipe(), t.pos)
            if v == "def":
                raise ParseError("nested definitions are not supported", t.pos, self.text)
        raise self.error("a filter")

    def call(self) -> s.Node:
        t = self.advance()
        name = t.value
        if name == "break":
            var = self.expect_kind("VAR", "label variable").value
            return s.Break(var, t.pos)
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return s.Call(name, (), t.pos)
            args = [self.nested(self.pipe)]
            while self.at(";"):
                self.advance()
                args.append(self.nested(self.pipe))
            self.expect(")")
            return s.Call(name, tuple(args), t.pos)
        if name in self.params:
            return s.CallArg(name, t.pos)
        return s.Call(name, (), t.pos)

    def if_(self) -> s.Node:
        return self._if_tail(self.advance().pos)

    def _if_tail(self, pos: int) -> s.Node:
        cond = self.nested(self.pipe)
        self.expect("then")
        then = self.nested(self.pipe)
        self.expect("else")
        else_ = self.nested(self.pipe)
        self.expect("end")
        return s.If(cond, then, else_, pos)

    def fold(self) -> s.Node:
        t = self.advance()
        source = self.postfix()
        self.expect("as")
        var = self.expect_kind("VAR", "variable").value
        self.expect("(")
        init = self.nested(self.pipe)
        self.expect(";")
        step = self.nested(self.pipe)
        self.expect(")")
        return s.Fold(t.value, source, var, init, step, t.pos)

    def object(self) -> s.Node:
        pos = self.expect("{").pos
        entries = []
        if not self.at("}"):
            entries.append(self.object_entry())
            while self.at(","):
                self.advance()
                entries.append(self.object_entry())
        self.expect("}")
        return s.ObjectCtor(tuple(entries), pos)

    def object_entry(self) -> tuple:
        t = self.tok
        if t.kind in ("IDENT", "KW"):
            self.advance()
            key = s.Str(t.value, t.pos)
            if not self.at(":"):
                return key, s.Path(s.Identity(t.pos), ((s.At(key, t.pos), False),), t.pos)
        elif t.kind == "STR":
            self.advance()
            key = s.Str(t.value, t.pos)
            if not self.at(":"):
                return key, s.Path(s.Identity(t.pos), ((s.At(key, t.pos), False),), t.pos)
        elif t.kind == "VAR":
            self.advance()
            if not self.at(":"):
                return s.Str(t.value, t.pos), s.Var(t.value, t.pos)
            key = s.Var(t.value, t.pos)
        elif self.at("("):
            self.advance()
            key = s.Paren(self.nested(self.pipe), t.pos)
            self.expect(")")
        else:
            raise self.error("object key")
        self.expect(":")
        saved = self.no_comma
        self.no_comma = True
        try:
            value = self.pipe()
        finally:
            self.no_comma = saved
        return key, value


def _group_node(op: str, left: s.Node, right: s.Node, pos: int) -> s.Node:
    if op == "|=":
        return s.Update(left, right, pos)
    if op == "=":
        return s.Assign(left, right, pos)
    if op == "//":
        return s.Alt(left, right, pos)
    if op == "and":
        return s.And(left, right, pos)
    if op == "or":
        return s.Or(left, right, pos)
    return s.OpUpdate(op[:-1], left, right, pos)


def parse_program(text: str) -> s.Program:
    """Parse a program: zero or more ``def``s followed by the main filter."""
    return Parser(text).program()


def parse_filter(text: str, params: tuple = ()) -> s.Node:
    p = Parser(text)
    p.params = params
    node = p.pipe()
    if p.tok.kind != "EOF":
        raise p.error("end of input")
    return node
