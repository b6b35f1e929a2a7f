"""Lazy evaluation of lowered filters.

``evaluate(node, ctx, v)`` returns an iterable of value results.  Nodes whose
output is a single value answer with a 1-tuple; everything that concatenates
or maps over streams is a generator, so nothing is computed before the
consumer asks for it.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator

from mjq import values as V
from mjq.frontend import syntax as s
from mjq.values import Error, Exc

_END = object()


class Context:
    """Variable, filter-argument and label bindings plus the definition table.

    ``bind`` and friends return a new context; the parent is never changed.
    """

    __slots__ = ("vars", "args", "labels", "defs")

    def __init__(self, defs=None, vars=None, args=None, labels=None):
        self.defs = {} if defs is None else defs
        self.vars = {} if vars is None else vars
        self.args = {} if args is None else args
        self.labels = {} if labels is None else labels

    def _copy(self) -> "Context":
        c = object.__new__(Context)
        c.defs, c.vars, c.args, c.labels = self.defs, self.vars, self.args, self.labels
        return c

    def bind(self, name: str, value) -> "Context":
        c = self._copy()
        c.vars = {**self.vars, name: value}
        return c

    def bind_label(self, name: str, token) -> "Context":
        c = self._copy()
        c.labels = {**self.labels, name: token}
        return c

    def for_call(self, params: tuple, closures: tuple) -> "Context":
        # a definition body only sees its own parameters; the well-formedness
        # check guarantees it references nothing else
        c = object.__new__(Context)
        c.defs = self.defs
        c.vars = {}
        c.labels = {}
        c.args = dict(zip(params, closures))
        return c


class Native:
    """A filter implemented in Python rather than by a definition."""

    __slots__ = ("name", "fn")

    def __init__(self, name: str, fn: Callable):
        self.name = name
        self.fn = fn


def _keys(v):
    return (V.arr_of_stream(V.keys_of(v)),)


NATIVES = {
    ("error", 0): Native("error", lambda v: (Error(v),)),
    ("keys", 0): Native("keys", _keys),
    ("length", 0): Native("length", lambda v: (V.length_of(v),)),
}


def lookup(ctx: Context, name: str, arity: int):
    key = (name, arity)
    found = ctx.defs.get(key)
    if found is None:
        found = NATIVES.get(key)
    if found is None:
        raise KeyError(f"undefined filter {name}/{arity}")
    return found


# -- stream helpers -----------------------------------------------------------


def trues(stream: Iterable) -> Iterator:
    """Outputs whose boolean value is not false; exceptions are kept."""
    for x in stream:
        if isinstance(x, Exc) or V.bool_of(x):
            yield x


def ite(v, i, then: Callable[[], Iterable], else_: Callable[[], Iterable]) -> Iterable:
    return then() if v == i else else_()


def junction(x, v: bool, rest: Callable[[], Iterable]) -> Iterator:
    """``and`` (v = False) and ``or`` (v = True) with short-circuiting."""
    b = V.bool_of(x)
    if isinstance(b, Exc):
        yield b
        return
    if b == v:
        yield v
        return
    for y in rest():
        yield V.bool_of(y)


def label_scope(stream: Iterable, token) -> Iterator:
    """Pass ``stream`` through until a break carrying ``token`` arrives."""
    for x in stream:
        if type(x) is V.Break and x.token is token:
            return
        yield x


class LazySeq:
    """Memoising view of an iterator so several consumers can share it."""

    __slots__ = ("_it", "_items")

    def __init__(self, it: Iterable):
        self._it = iter(it)
        self._items: list = []

    def get(self, i: int):
        items = self._items
        while len(items) <= i:
            if self._it is None:
                return _END
            x = next(self._it, _END)
            if x is _END:
                self._it = None
                return _END
            items.append(x)
        return items[i]


def fold_eval(v, source: Iterable, step: Callable, emit: bool, skip_root: bool = False) -> Iterator:
    """Fold ``step(acc, x)`` over ``source`` starting from ``v``.

    ``emit`` yields intermediate accumulators (the internal ``for``);
    ``skip_root`` additionally drops the first one, which gives ``foreach``.
    Without either flag this is ``reduce``.  The recursion over the source
    is run with an explicit stack so long sources do not exhaust Python's.
    """
    seq = LazySeq(source)
    if skip_root:
        h = seq.get(0)
        if h is _END:
            return
        if isinstance(h, Exc):
            yield h
            return
        stack = [(iter(step(v, h)), 1)]
    else:
        stack = [(iter((v,)), 0)]
    while stack:
        it, i = stack[-1]
        acc = next(it, _END)
        if acc is _END:
            stack.pop()
            continue
        if isinstance(acc, Exc):
            yield acc
            continue
        h = seq.get(i)
        if h is _END:
            yield acc
            continue
        if emit:
            yield acc
        if isinstance(h, Exc):
            yield h
            continue
        stack.append((iter(step(acc, h)), i + 1))


# -- evaluation ---------------------------------------------------------------


def evaluate(node: s.Node, ctx: Context, v) -> Iterable:
    return _EVAL[type(node)](node, ctx, v)


def _identity(node, ctx, v):
    return (v,)


def _literal(node, ctx, v):
    return (node.value,)


def _var(node, ctx, v):
    return (ctx.vars[node.name],)


def _array(node, ctx, v):
    return (V.arr_of_stream(evaluate(node.body, ctx, v)),)


def _object(node, ctx, v):
    if not node.entries:
        return ({},)
    k, x = node.entries[0]
    return (V.obj_entry(ctx.vars[k.name], ctx.vars[x.name]),)


def _comma(node, ctx, v):
    yield from evaluate(node.left, ctx, v)
    yield from evaluate(node.right, ctx, v)


def _pipe_gen(xs, right, ctx):
    for x in xs:
        if isinstance(x, Exc):
            yield x
        else:
            yield from evaluate(right, ctx, x)


def _pipe(node, ctx, v):
    xs = evaluate(node.left, ctx, v)
    if type(xs) is tuple and len(xs) == 1 and not isinstance(xs[0], Exc):
        return evaluate(node.right, ctx, xs[0])
    return _pipe_gen(xs, node.right, ctx)


def _alt(node, ctx, v):
    probe = trues(evaluate(node.left, ctx, v))
    first = next(probe, _END)
    if first is _END:
        yield from evaluate(node.right, ctx, v)
        return
    yield first
    yield from probe


def _and(node, ctx, v):
    return junction(ctx.vars[node.left.name], False, lambda: evaluate(node.right, ctx, v))


def _or(node, ctx, v):
    return junction(ctx.vars[node.left.name], True, lambda: evaluate(node.right, ctx, v))


def _bind_gen(xs, node, ctx, v):
    var, body = node.var, node.body
    for x in xs:
        if isinstance(x, Exc):
            yield x
        else:
            yield from evaluate(body, ctx.bind(var, x), v)


def _bind(node, ctx, v):
    xs = evaluate(node.source, ctx, v)
    if type(xs) is tuple and len(xs) == 1 and not isinstance(xs[0], Exc):
        return evaluate(node.body, ctx.bind(node.var, xs[0]), v)
    return _bind_gen(xs, node, ctx, v)


def _cartesian(node, ctx, v):
    return (V.binop(node.op, ctx.vars[node.left.name], ctx.vars[node.right.name]),)


def _try(node, ctx, v):
    for x in evaluate(node.body, ctx, v):
        if type(x) is Error and not x.polarised:
            # the handler sees the error's payload
            yield from evaluate(node.handler, ctx, x.payload)
        else:
            yield x


def _label(node, ctx, v):
    token = object()
    return label_scope(evaluate(node.body, ctx.bind_label(node.name, token), v), token)


def _break(node, ctx, v):
    return (V.Break(node.name, ctx.labels[node.name]),)


def _if(node, ctx, v):
    b = V.bool_of(ctx.vars[node.cond.name])
    return evaluate(node.then if b else node.else_, ctx, v)


def _iterate(node, ctx, v):
    return V.iterate(v)


def _index(node, ctx, v):
    return (V.index(v, ctx.vars[node.var]),)


def _slice(node, ctx, v):
    return (V.slice_(v, ctx.vars[node.start], ctx.vars[node.end]),)


def _fold(node, ctx, v):
    var, step = node.var, node.step

    def advance(acc, x):
        return evaluate(step, ctx.bind(var, x), acc)

    source = evaluate(node.source, ctx, v)
    if node.kind == "reduce":
        return fold_eval(v, source, advance, emit=False)
    return fold_eval(v, source, advance, emit=True, skip_root=True)


def _call(node, ctx, v):
    target = lookup(ctx, node.name, len(node.args))
    if type(target) is Native:
        return target.fn(v)
    closures = tuple((a, ctx) for a in node.args)
    return evaluate(target.body, ctx.for_call(target.params, closures), v)


def _call_arg(node, ctx, v):
    body, closure_ctx = ctx.args[node.name]
    return evaluate(body, closure_ctx, v)


def _update(node, ctx, v):
    from mjq.update import update_toplevel

    return update_toplevel(node.left, node.right, ctx, v)


_EVAL = {
    s.Identity: _identity,
    s.Num: _literal,
    s.Str: _literal,
    s.Var: _var,
    s.ArrayCtor: _array,
    s.ObjectCtor: _object,
    s.Comma: _comma,
    s.Pipe: _pipe,
    s.Alt: _alt,
    s.And: _and,
    s.Or: _or,
    s.BindAs: _bind,
    s.Cartesian: _cartesian,
    s.TryCatch: _try,
    s.Label: _label,
    s.Break: _break,
    s.If: _if,
    s.Iterate: _iterate,
    s.Index: _index,
    s.Slice: _slice,
    s.Fold: _fold,
    s.Call: _call,
    s.CallArg: _call_arg,
    s.Update: _update,
}


def take(stream: Iterable, n: int) -> list:
    return list(itertools.islice(stream, n))
