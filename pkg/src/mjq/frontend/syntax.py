"""Filter syntax trees.

One set of node classes serves both the surface tree produced by the parser
and the lowered tree the evaluator runs.  Surface-only nodes (``Paren``,
``TryShorthand``, ``Path``, ``Assign``, ``OpUpdate``) never survive lowering;
``Iterate``, ``Index`` and ``Slice`` only appear after it.  :func:`is_mir`
decides membership of the lowered subset.

Variable and label names are stored without the leading ``$``.  ``pos`` is
the source offset of the node and does not take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


def _pos():
    return field(default=-1, compare=False, repr=False)


class Node:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Num(Node):
    value: Union[int, float]
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Str(Node):
    value: str
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Identity(Node):
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Paren(Node):
    body: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class TryShorthand(Node):
    body: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class ArrayCtor(Node):
    body: Optional[Node]
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class ObjectCtor(Node):
    entries: tuple  # of (key Node, value Node)
    pos: int = _pos()


# path parts


@dataclass(frozen=True, slots=True)
class All(Node):
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class At(Node):
    index: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class From(Node):
    start: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Until(Node):
    end: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Range(Node):
    start: Node
    end: Node
    pos: int = _pos()


PathPart = Union[All, At, From, Until, Range]


@dataclass(frozen=True, slots=True)
class Path(Node):
    target: Node
    parts: tuple  # of (PathPart, optional: bool)
    pos: int = _pos()


# binary operators


@dataclass(frozen=True, slots=True)
class Pipe(Node):
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Comma(Node):
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Alt(Node):
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class And(Node):
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Or(Node):
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Update(Node):
    """``path |= rhs``."""

    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Assign(Node):
    """``path = rhs``."""

    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class OpUpdate(Node):
    """``path op= rhs`` for an arithmetic op or ``//``."""

    op: str
    left: Node
    right: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Cartesian(Node):
    op: str
    left: Node
    right: Node
    pos: int = _pos()


# binders and control


@dataclass(frozen=True, slots=True)
class BindAs(Node):
    source: Node
    var: str
    body: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Fold(Node):
    kind: str  # "reduce" | "foreach"
    source: Node
    var: str
    init: Node
    step: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Var(Node):
    name: str
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Label(Node):
    name: str
    body: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Break(Node):
    name: str
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class If(Node):
    cond: Node
    then: Node
    else_: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class TryCatch(Node):
    body: Node
    handler: Node
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Call(Node):
    name: str
    args: tuple = ()
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class CallArg(Node):
    name: str
    pos: int = _pos()


# lowered-only access nodes


@dataclass(frozen=True, slots=True)
class Iterate(Node):
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Index(Node):
    var: str
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Slice(Node):
    start: str
    end: str
    pos: int = _pos()


@dataclass(frozen=True, slots=True)
class Definition:
    name: str
    params: tuple
    body: Node
    pos: int = _pos()

    @property
    def key(self) -> tuple:
        return (self.name, len(self.params))


@dataclass(frozen=True, slots=True)
class Program:
    defs: tuple
    main: Node


def children(node: Node) -> tuple:
    """Direct sub-filters of ``node``, in source order."""
    t = type(node)
    if t in (Paren, TryShorthand):
        return (node.body,)
    if t is ArrayCtor:
        return () if node.body is None else (node.body,)
    if t is ObjectCtor:
        return tuple(x for kv in node.entries for x in kv)
    if t is Path:
        out = [node.target]
        for part, _ in node.parts:
            out.extend(part_children(part))
        return tuple(out)
    if t in (Pipe, Comma, Alt, And, Or, Update, Assign, OpUpdate, Cartesian):
        return (node.left, node.right)
    if t is BindAs:
        return (node.source, node.body)
    if t is Fold:
        return (node.source, node.init, node.step)
    if t is Label:
        return (node.body,)
    if t is If:
        return (node.cond, node.then, node.else_)
    if t is TryCatch:
        return (node.body, node.handler)
    if t is Call:
        return tuple(node.args)
    return ()


def part_children(part) -> tuple:
    t = type(part)
    if t is At:
        return (part.index,)
    if t is From:
        return (part.start,)
    if t is Until:
        return (part.end,)
    if t is Range:
        return (part.start, part.end)
    return ()


def is_mir(node: Node) -> bool:
    """Whether ``node`` lies entirely in the lowered subset."""
    t = type(node)
    if t in (Num, Str, Identity, Var, Break, CallArg, Iterate, Index, Slice):
        return True
    if t is ArrayCtor:
        return node.body is not None and is_mir(node.body)
    if t is ObjectCtor:
        if not node.entries:
            return True
        if len(node.entries) != 1:
            return False
        k, v = node.entries[0]
        return type(k) is Var and type(v) is Var
    if t is Cartesian:
        return type(node.left) is Var and type(node.right) is Var
    if t in (And, Or):
        return type(node.left) is Var and is_mir(node.right)
    if t in (Pipe, Comma, Alt, Update):
        return is_mir(node.left) and is_mir(node.right)
    if t is BindAs:
        return is_mir(node.source) and is_mir(node.body)
    if t is Fold:
        return type(node.init) is Identity and is_mir(node.source) and is_mir(node.step)
    if t is If:
        return type(node.cond) is Var and is_mir(node.then) and is_mir(node.else_)
    if t is TryCatch:
        return is_mir(node.body) and is_mir(node.handler)
    if t is Label:
        return is_mir(node.body)
    if t is Call:
        return all(is_mir(a) for a in node.args)
    return False
