"""Compile program text and run it on input values."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from mjq.evaluate import NATIVES, Context, evaluate
from mjq.frontend import syntax as s
from mjq.frontend.check import check_wellformed
from mjq.frontend.lower import FreshNames, lower_program
from mjq.frontend.parser import parse_program
from mjq.prelude import prelude
from mjq.values import Error

RESOURCE_ERROR = "resource: recursion depth exceeded"


class CompileError(Exception):
    """Raised when a program fails the binding checks."""

    def __init__(self, errors: list, text: str):
        self.errors = errors
        self.text = text
        super().__init__("; ".join(e.message for e in errors))

    def render(self, origin: str = "<program>") -> str:
        return "\n".join(e.render(self.text, origin) for e in self.errors)


@dataclass
class Compiled:
    defs: dict  # (name, arity) -> lowered Definition
    main: s.Node

    def context(self) -> Context:
        return Context(self.defs)

    def run(self, value) -> Iterator:
        """Outputs of the main filter on ``value``.

        Running out of Python stack ends the stream with a resource error.
        """
        try:
            yield from evaluate(self.main, self.context(), value)
        except RecursionError:
            yield Error(RESOURCE_ERROR)


@lru_cache(maxsize=None)
def lowered_prelude() -> dict:
    program = lower_program(prelude(), FreshNames())
    return {d.key: d for d in program.defs}


def compile_program(text: str, use_prelude: bool = True) -> Compiled:
    """Parse, check and lower ``text``; later definitions shadow earlier ones."""
    program = parse_program(text)
    base = lowered_prelude() if use_prelude else {}
    known = set(NATIVES) | set(base)
    errors = check_wellformed(program, known)
    if errors:
        raise CompileError(errors, text)
    # helper names only need to be unique within one definition body, so a
    # fresh counter here cannot clash with the prelude's
    lowered = lower_program(program, FreshNames())
    table = dict(base)
    table.update((d.key, d) for d in lowered.defs)
    return Compiled(table, lowered.main)


def run_text(text: str, value) -> list:
    return list(compile_program(text).run(value))
