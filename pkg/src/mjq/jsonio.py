"""JSON text in and out.

Reading accepts any number of whitespace-separated values.  Integers that fit
in 64 bits stay ``int``; anything else numeric becomes ``float``.  Writing is
compact with object keys sorted, so output is byte-for-byte deterministic.
"""

from __future__ import annotations

import json
import math
from typing import Iterator

from mjq.values import INT_MAX, INT_MIN

MAX_FLOAT = 1.7976931348623157e308

_WS = " \t\r\n"


class JsonError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.message = message
        self.offset = offset  # in bytes from the start of the input

    def __str__(self) -> str:
        return f"invalid JSON at byte {self.offset}: {self.message}"


def _parse_int(text: str):
    n = int(text)
    return n if INT_MIN <= n <= INT_MAX else float(text)


def _reject_constant(name: str):
    raise ValueError(f"{name} is not valid JSON")


_decoder = json.JSONDecoder(parse_int=_parse_int, parse_constant=_reject_constant)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8", "surrogatepass"))


def read_values(text: str) -> Iterator:
    """Yield the JSON values in ``text``; raise :class:`JsonError` on bad input."""
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos] in _WS:
            pos += 1
        if pos >= n:
            return
        try:
            value, end = _decoder.raw_decode(text, pos)
        except json.JSONDecodeError as e:
            raise JsonError(e.msg, _byte_offset(text, e.pos)) from None
        except ValueError as e:
            raise JsonError(str(e), _byte_offset(text, pos)) from None
        if end < n and text[end] not in _WS and _needs_separator(text[end - 1], text[end]):
            raise JsonError("values must be separated by whitespace", _byte_offset(text, end))
        yield value
        pos = end


def _needs_separator(prev: str, nxt: str) -> bool:
    # "1 2" is two values but "12" is one, so bare scalars must not touch
    word = lambda c: c.isalnum() or c in "+-."
    return word(prev) and word(nxt)


def decode_bytes(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise JsonError("input is not valid UTF-8", e.start) from None


def _number(n) -> str:
    if type(n) is int:
        return str(n)
    if math.isnan(n):
        return "null"
    if math.isinf(n):
        return repr(MAX_FLOAT if n > 0 else -MAX_FLOAT)
    return repr(n)


def write_value(v) -> str:
    parts: list = []
    _write(v, parts)
    return "".join(parts)


def _write(v, out: list) -> None:
    t = type(v)
    if v is None:
        out.append("null")
    elif t is bool:
        out.append("true" if v else "false")
    elif t is int or t is float:
        out.append(_number(v))
    elif t is str:
        out.append(json.dumps(v, ensure_ascii=False))
    elif t is list:
        out.append("[")
        for i, x in enumerate(v):
            if i:
                out.append(",")
            _write(x, out)
        out.append("]")
    elif t is dict:
        out.append("{")
        for i, k in enumerate(sorted(v)):
            if i:
                out.append(",")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(":")
            _write(v[k], out)
        out.append("}")
    else:
        raise TypeError(f"not a JSON value: {v!r}")
