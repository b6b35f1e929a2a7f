"""Lowering from the surface tree to the evaluator's subset.

Every construct is rewritten syntax-directed; helper variables come from
:class:`FreshNames` and contain ``!``, which the lexer never accepts in a
variable, so they cannot capture or be captured by user variables.

Nodes that are already spelled in the lowered subset (``.[]``, ``.[$i]``,
``$a + $b``, ``if $c then ...``, ``reduce f as $x (.; g)`` and so on) are kept
as they are, which makes lowering idempotent up to renaming.
"""

from __future__ import annotations

import dataclasses
import itertools

from mjq.frontend import syntax as s

EMPTY = s.Call("empty", ())


class FreshNames:
    def __init__(self):
        self._counter = itertools.count()

    def __call__(self, hint: str) -> str:
        return f"{hint}!{next(self._counter)}"


def _try(node: s.Node, optional: bool) -> s.Node:
    return s.TryCatch(node, EMPTY) if optional else node


def _pipe_chain(nodes: list) -> s.Node:
    out = nodes[-1]
    for node in reversed(nodes[:-1]):
        out = s.Pipe(node, out)
    return out


def _direct_access(part, optional: bool):
    """The lowered access node when ``.part`` is already in the subset."""
    if optional:
        return None
    t = type(part)
    if t is s.All:
        return s.Iterate()
    if t is s.At and type(part.index) is s.Var:
        return s.Index(part.index.name)
    if t is s.Range and type(part.start) is s.Var and type(part.end) is s.Var:
        return s.Slice(part.start.name, part.end.name)
    return None


class Lowerer:
    def __init__(self, fresh: FreshNames | None = None):
        self.fresh = fresh or FreshNames()

    def __call__(self, node: s.Node) -> s.Node:
        return self.lower(node)

    def lower(self, node: s.Node) -> s.Node:
        method = getattr(self, "_" + type(node).__name__)
        return method(node)

    # leaves

    def _Num(self, node):
        return node

    _Str = _Identity = _Var = _Break = _CallArg = _Iterate = _Index = _Slice = _Num

    def _Paren(self, node):
        return self.lower(node.body)

    def _TryShorthand(self, node):
        return s.TryCatch(self.lower(node.body), EMPTY)

    def _ArrayCtor(self, node):
        if node.body is None:
            return s.ArrayCtor(EMPTY)
        return s.ArrayCtor(self.lower(node.body))

    def _ObjectCtor(self, node):
        entries = node.entries
        if not entries:
            return s.ObjectCtor(())
        if len(entries) == 1:
            k, v = entries[0]
            if type(k) is s.Var and type(v) is s.Var:
                return s.ObjectCtor(((s.Var(k.name), s.Var(v.name)),))
            x, y = self.fresh("x"), self.fresh("y")
            return s.BindAs(
                self.lower(k),
                x,
                s.BindAs(self.lower(v), y, s.ObjectCtor(((s.Var(x), s.Var(y)),))),
            )
        total = s.ObjectCtor((entries[0],))
        for entry in entries[1:]:
            total = s.Cartesian("+", total, s.ObjectCtor((entry,)))
        return self.lower(total)

    def _Path(self, node):
        if type(node.target) is s.Identity and len(node.parts) == 1:
            direct = _direct_access(*node.parts[0])
            if direct is not None:
                return direct
        x = self.fresh("x")
        steps = [self.lower(node.target)]
        steps += [self.lower_part(part, opt, x) for part, opt in node.parts]
        return s.BindAs(s.Identity(), x, _pipe_chain(steps))

    def lower_part(self, part, optional: bool, anchor: str) -> s.Node:
        """Lower one path part whose filters run on the value bound to ``anchor``."""
        t = type(part)
        if t is s.All:
            return _try(s.Iterate(), optional)
        y = self.fresh("y")
        if t is s.At:
            return s.BindAs(
                s.Pipe(s.Var(anchor), self.lower(part.index)), y, _try(s.Index(y), optional)
            )
        z = self.fresh("z")
        if t is s.From:
            lo = s.Pipe(s.Var(anchor), self.lower(part.start))
            hi = _try(s.Call("length", ()), optional)
            access = s.Slice(y, z)
        elif t is s.Until:
            lo = s.Pipe(s.Var(anchor), self.lower(part.end))
            hi = s.Num(0)
            access = s.Slice(z, y)
        else:
            lo = s.Pipe(s.Var(anchor), self.lower(part.start))
            hi = s.Pipe(s.Var(anchor), self.lower(part.end))
            access = s.Slice(y, z)
        return s.BindAs(lo, y, s.BindAs(hi, z, _try(access, optional)))

    # operators

    def _same(self, node):
        return dataclasses.replace(node, left=self.lower(node.left), right=self.lower(node.right))

    _Pipe = _Comma = _Alt = _Update = _same

    def _Assign(self, node):
        x = self.fresh("x")
        return s.BindAs(self.lower(node.right), x, s.Update(self.lower(node.left), s.Var(x)))

    def _OpUpdate(self, node):
        if node.op == "//":
            rhs = s.Alt(s.Identity(), self.lower(node.right))
        else:
            rhs = self.lower(s.Cartesian(node.op, s.Identity(), node.right))
        return s.Update(self.lower(node.left), rhs)

    def _junction(self, node):
        if type(node.left) is s.Var:
            return type(node)(s.Var(node.left.name), self.lower(node.right))
        x = self.fresh("x")
        return s.BindAs(self.lower(node.left), x, type(node)(s.Var(x), self.lower(node.right)))

    _And = _Or = _junction

    def _Cartesian(self, node):
        if type(node.left) is s.Var and type(node.right) is s.Var:
            return s.Cartesian(node.op, s.Var(node.left.name), s.Var(node.right.name))
        x, y = self.fresh("x"), self.fresh("y")
        return s.BindAs(
            self.lower(node.left),
            x,
            s.BindAs(self.lower(node.right), y, s.Cartesian(node.op, s.Var(x), s.Var(y))),
        )

    # binders and control

    def _BindAs(self, node):
        return s.BindAs(self.lower(node.source), node.var, self.lower(node.body))

    def _Fold(self, node):
        step = self.lower(node.step)
        if type(node.init) is s.Identity:
            return s.Fold(node.kind, self.lower(node.source), node.var, s.Identity(), step)
        x = self.fresh("x")
        source = self.lower(s.Pipe(s.Var(x), node.source))
        return s.BindAs(
            s.Identity(),
            x,
            s.Pipe(self.lower(node.init), s.Fold(node.kind, source, node.var, s.Identity(), step)),
        )

    def _If(self, node):
        then, else_ = self.lower(node.then), self.lower(node.else_)
        if type(node.cond) is s.Var:
            return s.If(s.Var(node.cond.name), then, else_)
        x = self.fresh("x")
        return s.BindAs(self.lower(node.cond), x, s.If(s.Var(x), then, else_))

    def _TryCatch(self, node):
        return s.TryCatch(self.lower(node.body), self.lower(node.handler))

    def _Label(self, node):
        return s.Label(node.name, self.lower(node.body))

    def _Call(self, node):
        return s.Call(node.name, tuple(self.lower(a) for a in node.args))


def lower_filter(node: s.Node, fresh: FreshNames | None = None) -> s.Node:
    return Lowerer(fresh).lower(node)


def lower_path_part(part, optional: bool, anchor: str, fresh: FreshNames | None = None) -> s.Node:
    return Lowerer(fresh).lower_part(part, optional, anchor)


def lower_program(program: s.Program, fresh: FreshNames | None = None) -> s.Program:
    lw = Lowerer(fresh)
    defs = tuple(
        s.Definition(d.name, d.params, lw.lower(d.body), d.pos) for d in program.defs
    )
    return s.Program(defs, lw.lower(program.main))


# -- reading filters written directly in the lowered subset --------------


def mir_view(node: s.Node) -> s.Node:
    """Reinterpret a parsed filter that is spelled in the lowered subset.

    Parentheses are dropped, ``.[]``/``.[$i]``/``.[$i:$j]`` become access
    nodes and a trailing ``?`` becomes ``try ... catch empty``.  Raises
    ``ValueError`` for anything outside the subset.
    """
    t = type(node)
    if t is s.Paren:
        return mir_view(node.body)
    if t is s.TryShorthand:
        return s.TryCatch(mir_view(node.body), EMPTY)
    if t is s.Path:
        if type(node.target) is not s.Identity or len(node.parts) != 1:
            raise ValueError("only single accesses on '.' are in the lowered subset")
        part, optional = node.parts[0]
        access = _direct_access(part, False)
        if access is None:
            raise ValueError("path part is not in the lowered subset")
        return _try(access, optional)
    if t is s.ArrayCtor and node.body is None:
        raise ValueError("[] is not in the lowered subset")
    if t in (s.Assign, s.OpUpdate):
        raise ValueError("assignments are not in the lowered subset")
    rebuilt = _map_children(node, mir_view)
    if not s.is_mir(rebuilt):
        raise ValueError(f"{type(node).__name__} is not in the lowered subset")
    return rebuilt


def _map_children(node: s.Node, fn) -> s.Node:
    t = type(node)
    if t is s.ArrayCtor:
        return s.ArrayCtor(None if node.body is None else fn(node.body))
    if t is s.ObjectCtor:
        return s.ObjectCtor(tuple((fn(k), fn(v)) for k, v in node.entries))
    if t is s.Call:
        return s.Call(node.name, tuple(fn(a) for a in node.args))
    changes = {}
    for f in dataclasses.fields(node):
        value = getattr(node, f.name)
        if isinstance(value, s.Node):
            changes[f.name] = fn(value)
    return dataclasses.replace(node, **changes) if changes else node


_VAR_FIELDS = {
    s.Var: ("name",),
    s.BindAs: ("var",),
    s.Fold: ("var",),
    s.Index: ("var",),
    s.Slice: ("start", "end"),
}


def canonical_names(node: s.Node) -> s.Node:
    """Rename variables to ``v0, v1, ...`` in order of first occurrence."""
    names: dict = {}

    def name(n: str) -> str:
        if n not in names:
            names[n] = f"v{len(names)}"
        return names[n]

    def go(n):
        fields = _VAR_FIELDS.get(type(n), ())
        # binder names come before the sub-filters in field order
        changes = {f: name(getattr(n, f)) for f in fields}
        n = _map_children(n, go)
        return dataclasses.replace(n, **changes) if changes else n

    return go(node)


def alpha_equal(a: s.Node, b: s.Node) -> bool:
    return canonical_names(a) == canonical_names(b)
