"""Binding checks run on parsed programs before lowering."""

from __future__ import annotations

from dataclasses import dataclass

from mjq.frontend import syntax as s


@dataclass(frozen=True)
class BindingError:
    message: str
    pos: int

    def render(self, text: str, origin: str = "<program>") -> str:
        line = text.count("\n", 0, max(self.pos, 0)) + 1
        col = self.pos - (text.rfind("\n", 0, max(self.pos, 0)) + 1) + 1
        return f"{origin}:{line}:{col}: {self.message}"


def check_wellformed(program: s.Program, known: set = frozenset()) -> list:
    """Return one :class:`BindingError` per unbound argument, label, variable or filter.

    ``known`` holds ``(name, arity)`` pairs defined outside the program
    (prelude and native filters).
    """
    defined = set(known) | {d.key for d in program.defs}
    errors: list = []

    def walk(node, vars_, labels, params):
        t = type(node)
        if t is s.Var:
            if node.name not in vars_:
                errors.append(BindingError(f"unbound variable ${node.name}", node.pos))
            return
        if t is s.Break:
            if node.name not in labels:
                errors.append(BindingError(f"unbound label ${node.name}", node.pos))
            return
        if t is s.CallArg:
            if node.name not in params:
                errors.append(BindingError(f"unbound filter argument {node.name}", node.pos))
            return
        if t is s.Index:
            if node.var not in vars_:
                errors.append(BindingError(f"unbound variable ${node.var}", node.pos))
            return
        if t is s.Slice:
            for v in (node.start, node.end):
                if v not in vars_:
                    errors.append(BindingError(f"unbound variable ${v}", node.pos))
            return
        if t is s.Call and (node.name, len(node.args)) not in defined:
            errors.append(
                BindingError(f"undefined filter {node.name}/{len(node.args)}", node.pos)
            )
        if t is s.BindAs:
            walk(node.source, vars_, labels, params)
            walk(node.body, vars_ | {node.var}, labels, params)
            return
        if t is s.Fold:
            walk(node.source, vars_, labels, params)
            walk(node.init, vars_, labels, params)
            walk(node.step, vars_ | {node.var}, labels, params)
            return
        if t is s.Label:
            walk(node.body, vars_, labels | {node.name}, params)
            return
        for child in s.children(node):
            walk(child, vars_, labels, params)

    for d in program.defs:
        walk(d.body, frozenset(), frozenset(), frozenset(d.params))
    walk(program.main, frozenset(), frozenset(), frozenset())
    return errors
