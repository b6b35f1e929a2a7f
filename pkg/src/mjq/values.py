"""JSON values and the operations the interpreter performs on them.

Values are plain Python data: ``None``, ``bool``, ``int`` (always within the
signed 64-bit range), ``float``, ``str``, ``list`` and ``dict``.  Lists and
dicts are never mutated once built; every operation below returns fresh
containers.

Exceptions travel *inside* streams as :class:`Error` and :class:`Break`
instances rather than being raised.  Every operation accepting values also
accepts these and hands back the leftmost one unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any, Callable, Iterable, Iterator

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class Exc:
    """Common base of in-stream exceptions."""

    __slots__ = ()
    polarised: bool


@dataclass(frozen=True, slots=True)
class Error(Exc):
    payload: Any
    polarised: bool = False

    def __repr__(self) -> str:
        mark = "~" if self.polarised else ""
        return f"{mark}error({self.payload!r})"


@dataclass(frozen=True, slots=True)
class Break(Exc):
    # token identifies the dynamic label instance; name is kept for messages
    name: str
    token: object = None
    polarised: bool = False

    def __repr__(self) -> str:
        mark = "~" if self.polarised else ""
        return f"{mark}break(${self.name})"


def is_exc(x) -> bool:
    return isinstance(x, Exc)


# -- classification ---------------------------------------------------------


def type_name(v) -> str:
    if v is None:
        return "null"
    t = type(v)
    if t is bool:
        return "boolean"
    if t is int or t is float:
        return "number"
    if t is str:
        return "string"
    if t is list:
        return "array"
    if t is dict:
        return "object"
    raise TypeError(f"not a JSON value: {v!r}")


def is_number(v) -> bool:
    t = type(v)
    return t is int or t is float


def _rank(v) -> int:
    if v is None:
        return 0
    t = type(v)
    if t is bool:
        return 2 if v else 1
    if t is int or t is float:
        return 3
    if t is str:
        return 4
    if t is list:
        return 5
    return 6


def normalize_int(n: int):
    """Keep integers inside the 64-bit range; larger results become floats."""
    if INT_MIN <= n <= INT_MAX:
        return n
    return float(n)


def to_index(n):
    """Truncate a number toward zero; None when it has no integer meaning."""
    if type(n) is int:
        return n
    if type(n) is float:
        if math.isnan(n) or math.isinf(n):
            return None
        return int(n)
    return None


def _fail(op: str, *vs) -> Error:
    kinds = " and ".join(type_name(v) for v in vs)
    return Error(f"{op}: {kinds} cannot be {_VERBS.get(op, 'combined')}")


_VERBS = {
    "add": "added",
    "sub": "subtracted",
    "mul": "multiplied",
    "div": "divided",
    "rem": "divided (remainder)",
    "index": "indexed",
    "iterate": "iterated over",
    "slice": "sliced",
    "length": "measured",
    "keys": "listed",
    "object": "used as key",
    "update": "updated",
}


# -- ordering ---------------------------------------------------------------


def _cmp_num(a, b) -> int:
    a_nan = type(a) is float and a != a
    b_nan = type(b) is float and b != b
    if a_nan or b_nan:
        # NaN sits below every number and equals itself
        return int(b_nan) - int(a_nan)
    return (a > b) - (a < b)


def cmp(l, r) -> int:
    """Total order on values: -1, 0 or 1."""
    rl, rr = _rank(l), _rank(r)
    if rl != rr:
        return -1 if rl < rr else 1
    if rl == 3:
        return _cmp_num(l, r)
    if rl == 4:
        return (l > r) - (l < r)
    if rl == 5:
        for a, b in zip(l, r):
            c = cmp(a, b)
            if c:
                return c
        return (len(l) > len(r)) - (len(l) < len(r))
    if rl == 6:
        kl, kr = sorted(l), sorted(r)
        if kl != kr:
            return (kl > kr) - (kl < kr)
        for k in kl:
            c = cmp(l[k], r[k])
            if c:
                return c
        return 0
    return 0


sort_key = cmp_to_key(cmp)


def equal(l, r) -> bool:
    return cmp(l, r) == 0


def canon(v):
    """Hashable key with ``canon(a) == canon(b)`` iff ``equal(a, b)``."""
    t = type(v)
    if v is None or t is bool or t is str:
        return (_rank(v), v)
    if t is int or t is float:
        if v != v:
            return (3, "nan")
        return (3, v)
    if t is list:
        return (5, tuple(canon(x) for x in v))
    return (6, tuple(sorted((k, canon(x)) for k, x in v.items())))


def sort_values(vs: Iterable) -> list:
    return sorted(vs, key=sort_key)


# -- construction -----------------------------------------------------------


def arr_of_stream(s: Iterable):
    """Collect a finite stream into an array, or return its first exception."""
    out = []
    for x in s:
        if isinstance(x, Exc):
            return x
        out.append(x)
    return out


def obj_entry(k, v):
    if isinstance(k, Exc):
        return k
    if isinstance(v, Exc):
        return v
    if type(k) is not str:
        return Error(f"object: {type_name(k)} cannot be used as key")
    return {k: v}


# -- simple functions -------------------------------------------------------


def keys_of(v) -> Iterator:
    if isinstance(v, Exc):
        return iter((v,))
    if type(v) is list:
        return iter(range(len(v)))
    if type(v) is dict:
        return iter(sorted(v))
    return iter((_fail("keys", v),))


def length_of(v):
    if isinstance(v, Exc):
        return v
    if v is None:
        return 0
    t = type(v)
    if t is int or t is float:
        return abs(v)
    if t is bool:
        return _fail("length", v)
    return len(v)


def bool_of(x):
    if isinstance(x, Exc):
        return x
    return not (x is None or x is False)


# -- arithmetic -------------------------------------------------------------


def _num_op(op, a, b):
    if type(a) is int and type(b) is int:
        return normalize_int(op(a, b))
    return op(float(a), float(b))


def add(l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    if l is None:
        return r
    if r is None:
        return l
    tl, tr = type(l), type(r)
    if (tl is int or tl is float) and (tr is int or tr is float):
        return _num_op(lambda a, b: a + b, l, r)
    if tl is tr and tl is not bool:
        if tl is dict:
            out = dict(l)
            out.update(r)
            return out
        return l + r
    return _fail("add", l, r)


def sub(l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    if is_number(l) and is_number(r):
        return _num_op(lambda a, b: a - b, l, r)
    if type(l) is list and type(r) is list:
        drop = {canon(x) for x in r}
        return [x for x in l if canon(x) not in drop]
    return _fail("sub", l, r)


def merge(l: dict, r: dict) -> dict:
    """Recursive object merge; the right side wins except where both sides hold objects."""
    out = dict(l)
    for k, vr in r.items():
        vl = out.get(k)
        if type(vl) is dict and type(vr) is dict:
            out[k] = merge(vl, vr)
        else:
            out[k] = vr
    return out


def _repeat(s: str, n):
    count = to_index(n)
    if count is None or count < 0:
        return Error(f"mul: string cannot be repeated {n!r} times")
    if count == 0:
        return None
    return s * count


def mul(l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    if is_number(l) and is_number(r):
        return _num_op(lambda a, b: a * b, l, r)
    if type(l) is str and is_number(r):
        return _repeat(l, r)
    if type(r) is str and is_number(l):
        return _repeat(r, l)
    if type(l) is dict and type(r) is dict:
        return merge(l, r)
    return _fail("mul", l, r)


def split_str(x: str, sep: str) -> list:
    """Split ``x`` at every non-overlapping occurrence of ``sep`` (left to right).

    Scans with an accumulator that never contains ``sep``; ``sep`` must be
    non-empty.
    """
    chunks = []
    acc_start = 0
    i = 0
    n = len(sep)
    while i < len(x):
        if x.startswith(sep, i):
            chunks.append(x[acc_start:i])
            i += n
            acc_start = i
        else:
            i += 1
    chunks.append(x[acc_start:])
    return chunks


def div(l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    if is_number(l) and is_number(r):
        if r == 0:
            return Error("div: number cannot be divided by zero")
        if type(l) is int and type(r) is int:
            if l % r == 0:
                return normalize_int(l // r)
            return l / r
        return float(l) / float(r)
    if type(l) is str and type(r) is str:
        if not l:
            return []
        if not r:
            return list(l)
        return split_str(l, r)
    return _fail("div", l, r)


def rem(l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    if is_number(l) and is_number(r):
        if r == 0:
            return Error("rem: number cannot be divided by zero")
        if type(l) is int and type(r) is int:
            m = abs(l) % abs(r)
            return normalize_int(-m if l < 0 else m)
        try:
            return math.fmod(l, r)
        except ValueError:
            return math.nan
    return _fail("rem", l, r)


def compare_op(op: str, l, r):
    if isinstance(l, Exc):
        return l
    if isinstance(r, Exc):
        return r
    c = cmp(l, r)
    if op == "==":
        return c == 0
    if op == "!=":
        return c != 0
    if op == "<":
        return c < 0
    if op == "<=":
        return c <= 0
    if op == ">":
        return c > 0
    return c >= 0


ARITH = {"+": add, "-": sub, "*": mul, "/": div, "%": rem}
COMPARE = ("==", "!=", "<", "<=", ">", ">=")


def binop(op: str, l, r):
    fn = ARITH.get(op)
    if fn is not None:
        return fn(l, r)
    return compare_op(op, l, r)


# -- access -----------------------------------------------------------------


def index(v, i):
    if isinstance(v, Exc):
        return v
    if isinstance(i, Exc):
        return i
    tv = type(v)
    if tv is list and is_number(i):
        j = to_index(i)
        if j is None:
            return Error(f"index: array cannot be indexed with {i!r}")
        if j < 0:
            j += len(v)
            if j < 0:
                return Error(f"index: out of bounds negative index {i!r}")
        return v[j] if j < len(v) else None
    if tv is dict and type(i) is str:
        return v.get(i)
    return _fail("index", v, i)


def iterate(v) -> Iterator:
    if isinstance(v, Exc):
        return iter((v,))
    if type(v) is list:
        return iter(v)
    if type(v) is dict:
        return iter([v[k] for k in sorted(v)])
    return iter((_fail("iterate", v),))


def _slice_bounds(n: int, i, j):
    a, b = to_index(i), to_index(j)
    if a is None or b is None:
        return None
    if a < 0:
        a += n
    if b < 0:
        b += n
    if a < 0 or b < 0:
        return None
    return a, b


def slice_(v, i, j):
    for x in (v, i, j):
        if isinstance(x, Exc):
            return x
    tv = type(v)
    if (tv is list or tv is str) and is_number(i) and is_number(j):
        bounds = _slice_bounds(len(v), i, j)
        if bounds is None:
            return Error(f"slice: bounds {i!r}:{j!r} out of range")
        a, b = bounds
        return v[a:b] if a < b else v[:0]
    return _fail("slice", v)


def head(stream: Iterable, fallback):
    for x in stream:
        return x
    return fallback


# -- updating ---------------------------------------------------------------

Updater = Callable[[Any], Iterable]


def upd_iterate(v, f: Updater):
    """Replace every child of ``v`` by the outputs of ``f``.

    Arrays splice in all outputs; object entries keep the first output or
    disappear when ``f`` yields nothing.
    """
    if isinstance(v, Exc):
        return v
    if type(v) is list:
        out = []
        for x in v:
            for y in f(x):
                if isinstance(y, Exc):
                    return y
                out.append(y)
        return out
    if type(v) is dict:
        out = {}
        for k in sorted(v):
            h = head(f(v[k]), _NOTHING)
            if h is _NOTHING:
                continue
            if isinstance(h, Exc):
                return h
            out[k] = h
        return out
    return _fail("update", v)


_NOTHING = object()


def upd_index(v, i, f: Updater):
    if isinstance(v, Exc):
        return v
    if isinstance(i, Exc):
        return i
    tv = type(v)
    if tv is list and is_number(i):
        j = to_index(i)
        if j is None:
            return Error(f"update: array cannot be indexed with {i!r}")
        if j < 0:
            j += len(v)
            if j < 0:
                return Error(f"update: out of bounds negative index {i!r}")
        if j >= len(v):
            return Error(f"update: index {i!r} out of bounds")
        h = head(f(v[j]), _NOTHING)
        if h is _NOTHING:
            return v[:j] + v[j + 1 :]
        if isinstance(h, Exc):
            return h
        return v[:j] + [h] + v[j + 1 :]
    if tv is dict and type(i) is str:
        h = head(f(v.get(i)), _NOTHING)
        if h is _NOTHING:
            return {k: x for k, x in v.items() if k != i}
        if isinstance(h, Exc):
            return h
        out = dict(v)
        out[i] = h
        return out
    return _fail("update", v)


def upd_slice(v, i, j, f: Updater):
    for x in (v, i, j):
        if isinstance(x, Exc):
            return x
    if type(v) is list and is_number(i) and is_number(j):
        bounds = _slice_bounds(len(v), i, j)
        if bounds is None:
            return Error(f"update: slice bounds {i!r}:{j!r} out of range")
        a, b = bounds
        if a > b:
            return v
        h = head(f(v[a:b]), [])
        if isinstance(h, Exc):
            return h
        if type(h) is not list:
            return Error(f"update: slice cannot be replaced by {type_name(h)}")
        return v[:a] + h + v[b:]
    return _fail("update", v)
