"""Builtin definitions available to every program.

Only ``error``, ``keys`` and ``length`` are implemented in Python (see
:data:`mjq.evaluate.NATIVES`); everything else is written in the language.
"""

from __future__ import annotations

from functools import lru_cache

from mjq.frontend.parser import parse_program
from mjq.frontend.syntax import Program

SOURCE = """
def empty: ({} | .[]) as $x | .;
def true: 0 == 0;
def false: 0 != 0;
def null: [][0];
def not: if . then false else true end;
def error(f): f | error;
def select(f): if f then . else empty end;
def recurse(f): ., (f | recurse(f));
def recurse: recurse(.[]?);
def first(f): label $x | f | (., break $x);
def last(f): reduce f as $x (null; $x);
def add: reduce .[] as $x (null; . + $x);
def map(f): [.[] | f];
"""


@lru_cache(maxsize=None)
def prelude() -> Program:
    # a program needs a main filter; the identity stands in for it
    return parse_program(SOURCE + ".")
