"""Interleaved updates ``f |= g`` without path construction.

``update(mu, sigma, ctx, v)`` replaces every part of ``v`` that ``mu`` points
at by the outputs of ``sigma``.  ``sigma`` is a plain Python function closed
over the context the update was entered with, so bindings made inside ``mu``
never reach it.  Exceptions produced by ``sigma`` are polarised, which hides
them from ``try`` inside ``mu``; the top level removes the mark again.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Iterable, Iterator

from mjq import values as V
from mjq.evaluate import (
    _END,
    Context,
    LazySeq,
    Native,
    evaluate,
    fold_eval,
    lookup,
    trues,
)
from mjq.frontend import syntax as s
from mjq.values import Error, Exc

Sigma = Callable[[object], Iterable]


def polarise(x):
    if isinstance(x, Exc) and not x.polarised:
        return dataclasses.replace(x, polarised=True)
    return x


def depolarise(x):
    if isinstance(x, Exc) and x.polarised:
        return dataclasses.replace(x, polarised=False)
    return x


def update_toplevel(f: s.Node, g: s.Node, ctx: Context, v) -> Iterator:
    def sigma(x):
        for y in evaluate(g, ctx, x):
            yield polarise(y)

    for y in update(f, sigma, ctx, v):
        yield depolarise(y)


def update(mu: s.Node, sigma: Sigma, ctx: Context, v) -> Iterable:
    handler = _UPDATE.get(type(mu))
    if handler is None:
        return (Error(f"{_describe(mu)} is not a valid path expression"),)
    return handler(mu, sigma, ctx, v)


def _describe(mu) -> str:
    names = {
        s.Num: "number literal",
        s.Str: "string literal",
        s.Var: "variable",
        s.ArrayCtor: "array construction",
        s.ObjectCtor: "object construction",
        s.Cartesian: f"operator {getattr(mu, 'op', '')}",
        s.And: "and",
        s.Or: "or",
        s.Label: "label",
        s.Update: "update",
    }
    return names.get(type(mu), type(mu).__name__)


def _identity(mu, sigma, ctx, v):
    return sigma(v)


def _pipe(mu, sigma, ctx, v):
    right = mu.right

    def inner(x):
        return update(right, sigma, ctx, x)

    return update(mu.left, inner, ctx, v)


def _comma(mu, sigma, ctx, v):
    for x in update(mu.left, sigma, ctx, v):
        if isinstance(x, Exc):
            yield x
        else:
            yield from update(mu.right, sigma, ctx, x)


def _alt(mu, sigma, ctx, v):
    probe = next(trues(evaluate(mu.left, ctx, v)), _END)
    if probe is _END:
        return update(mu.right, sigma, ctx, v)
    return update(mu.left, sigma, ctx, v)


def _iterate(mu, sigma, ctx, v):
    return (V.upd_iterate(v, sigma),)


def _index(mu, sigma, ctx, v):
    return (V.upd_index(v, ctx.vars[mu.var], sigma),)


def _slice(mu, sigma, ctx, v):
    return (V.upd_slice(v, ctx.vars[mu.start], ctx.vars[mu.end], sigma),)


def _bind(mu, sigma, ctx, v):
    var, body = mu.var, mu.body
    xs = evaluate(mu.source, ctx, v)
    if type(xs) is tuple and len(xs) == 1 and not isinstance(xs[0], Exc):
        return update(body, sigma, ctx.bind(var, xs[0]), v)

    def step(acc, x):
        return update(body, sigma, ctx.bind(var, x), acc)

    return fold_eval(v, xs, step, emit=False)


def _if(mu, sigma, ctx, v):
    b = V.bool_of(ctx.vars[mu.cond.name])
    return update(mu.then if b else mu.else_, sigma, ctx, v)


def catch_update(x, g: s.Node, ctx: Context, v) -> Iterator:
    if type(x) is Error and not x.polarised:
        outputs = iter(evaluate(g, ctx, x.payload))
        first = next(outputs, _END)
        if first is _END:
            yield v
            return
        # whatever the handler yields cannot point into v
        yield Error(first)
        for y in outputs:
            yield Error(y)
        return
    yield x


def _try(mu, sigma, ctx, v):
    for x in update(mu.body, sigma, ctx, v):
        yield from catch_update(x, mu.handler, ctx, v)


def _break(mu, sigma, ctx, v):
    return (V.Break(mu.name, ctx.labels[mu.name]),)


def fold_update(v, seq: LazySeq, i: int, var: str, f: s.Node, sigma: Sigma, ctx: Context, emit_sigma: bool):
    """Update counterpart of reduce (``emit_sigma`` false) and ``for``."""
    h = seq.get(i)
    if h is _END:
        return sigma(v)
    if isinstance(h, Exc):
        return (h,)

    def rest(x):
        return fold_update(x, seq, i + 1, var, f, sigma, ctx, emit_sigma)

    inner = ctx.bind(var, h)
    if not emit_sigma:
        return update(f, rest, inner, v)
    return _flat_update(sigma(v), f, rest, inner)


def _flat_update(xs, f, sigma, ctx):
    for y in xs:
        if isinstance(y, Exc):
            yield y
        else:
            yield from update(f, sigma, ctx, y)


def foreach_update(v, seq: LazySeq, var: str, f: s.Node, sigma: Sigma, ctx: Context):
    h = seq.get(0)
    if h is _END:
        return (v,)
    if isinstance(h, Exc):
        return (h,)

    def rest(x):
        return fold_update(x, seq, 1, var, f, sigma, ctx, emit_sigma=True)

    return update(f, rest, ctx.bind(var, h), v)


def _fold(mu, sigma, ctx, v):
    seq = LazySeq(evaluate(mu.source, ctx, v))
    if mu.kind == "reduce":
        return fold_update(v, seq, 0, mu.var, mu.step, sigma, ctx, emit_sigma=False)
    return foreach_update(v, seq, mu.var, mu.step, sigma, ctx)


def _call(mu, sigma, ctx, v):
    target = lookup(ctx, mu.name, len(mu.args))
    if type(target) is Native:
        if target.name == "error":
            return target.fn(v)
        return (Error(f"{target.name} is not a valid path expression"),)
    closures = tuple((a, ctx) for a in mu.args)
    return update(target.body, sigma, ctx.for_call(target.params, closures), v)


def _call_arg(mu, sigma, ctx, v):
    body, closure_ctx = ctx.args[mu.name]
    return update(body, sigma, closure_ctx, v)


_UPDATE = {
    s.Identity: _identity,
    s.Pipe: _pipe,
    s.Comma: _comma,
    s.Alt: _alt,
    s.Iterate: _iterate,
    s.Index: _index,
    s.Slice: _slice,
    s.BindAs: _bind,
    s.If: _if,
    s.TryCatch: _try,
    s.Break: _break,
    s.Fold: _fold,
    s.Call: _call,
    s.CallArg: _call_arg,
}
