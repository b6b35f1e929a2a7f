"""Shared test utilities: running programs and comparing streams exactly."""

from mjq.jsonio import write_value
from mjq.program import compile_program
from mjq.values import Break, Error


def show(x) -> str:
    """Type-exact rendering of one stream element (1, 1.0 and true differ)."""
    if type(x) is Error:
        mark = "~" if x.polarised else ""
        return f"{mark}error({write_value(x.payload)})"
    if type(x) is Break:
        return f"break(${x.name})"
    return write_value(x)


def shows(stream) -> list:
    return [show(x) for x in stream]


def run(program: str, value=None) -> list:
    return shows(compile_program(program).run(value))


def js(*values) -> list:
    """Expected stream written as Python values."""
    return [write_value(v) for v in values]
