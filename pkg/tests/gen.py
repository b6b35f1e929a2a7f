"""Seeded random generators for the high-volume property checks.

They produce the same shapes as the Hypothesis strategies in ``strategies``
but cost microseconds per case, which keeps thousands of cases per property
affordable.  Every case is derived from its own seed so a failure can be
replayed with ``cases(n, seed)``.
"""

import math
import random
import struct

from strategies import KEYS

SCALARS = (None, True, False, 0, 1, -1, 2, 3, -4, 0.5, -1.5, 2.0, "", "a", "b", "ab", "ba")
WIDE_NUMBERS = (
    0, -0.0, 1, -1, 2**63 - 1, -(2**63), 2**53 + 1, 1e-300, 5e-324, 1.5, -2.25,
    1e300, -1e300, math.inf, -math.inf, math.nan, 0.1, 123456789,
)
TEXT = ("", "a", "b", "ab", "é", "a\"", "\\", "\n", " ", "😀", "ba", "abc")

FILTER_LEAVES = (
    ".", "empty", "1", "2", '"a"', "null", "true", "false",
    ".[]?", ".a?", ".[0]?", "length?", "error",
)
PATH_LEAVES = (".", ".[]", ".[0]", ".[1]", ".[-1]", ".a", ".b", ".[1:2]", ".[:1]", "empty", ".[]?", ".a?")
# leaves that suit one kind of document
SHAPED_LEAVES = {
    "array": (".", ".[]", ".[0]", ".[1]", ".[-1]", ".[1:2]", ".[:1]", "empty", ".[]?", ".[0]?"),
    "object": (".", ".[]", ".a", ".b", ".c", "empty", ".[]?", ".a?"),
}
BINARY = (",", "|", "+", "-", "*", "==", "<", "//", "and", "or")


class Gen:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def value(self, depth=2):
        r = self.rng
        roll = r.random()
        if depth == 0 or roll < 0.5:
            return r.choice(SCALARS)
        if roll < 0.75:
            return [self.value(depth - 1) for _ in range(r.randrange(4))]
        return {r.choice(KEYS): self.value(depth - 1) for _ in range(r.randrange(4))}

    def doc(self, shape, depth=2):
        """A nested document of one shape, with scalars at the bottom."""
        r = self.rng
        if depth == 0 or r.random() < 0.15:
            return r.choice(SCALARS[3:])
        n = r.randrange(1, 4)
        if shape == "array":
            return [self.doc(shape, depth - 1) for _ in range(n)]
        return {r.choice(KEYS): self.doc(shape, depth - 1) for _ in range(n)}

    def wide_value(self, depth=2):
        r = self.rng
        roll = r.random()
        if depth == 0 or roll < 0.55:
            kind = r.randrange(5)
            if kind == 0:
                return r.choice((None, True, False))
            if kind == 1:
                return r.choice(WIDE_NUMBERS)
            if kind == 2:
                return r.randint(-(2**63), 2**63 - 1)
            if kind == 3:
                return struct_float(r)
            return "".join(r.choice(TEXT) for _ in range(r.randrange(3)))
        if roll < 0.78:
            return [self.wide_value(depth - 1) for _ in range(r.randrange(4))]
        return {r.choice(TEXT): self.wide_value(depth - 1) for _ in range(r.randrange(4))}

    def filter(self, depth=2, bound=()):
        r = self.rng
        if depth == 0 or r.random() < 0.3:
            return r.choice(FILTER_LEAVES + tuple("$" + v for v in bound))
        sub = lambda: self.filter(depth - 1, bound)
        var = f"v{len(bound)}"
        kind = r.randrange(11)
        if kind == 0:
            return f"({sub()}) {r.choice(BINARY)} ({sub()})"
        if kind == 1:
            return f"[{sub()}]"
        if kind == 2:
            return f"{{{r.choice(KEYS)}: ({sub()})}}"
        if kind == 3:
            return f"if {sub()} then {sub()} else {sub()} end"
        if kind == 4:
            return f"try ({sub()}) catch ({sub()})"
        if kind == 5:
            return f"({sub()}) as ${var} | ({self.filter(depth - 1, bound + (var,))})"
        if kind == 6:
            fold = r.choice(("reduce", "foreach"))
            return f"{fold} ({sub()}) as ${var} (({sub()}); ({self.filter(depth - 1, bound + (var,))}))"
        if kind == 7:
            return f".[{sub()}]?"
        if kind == 8:
            return f"first({sub()})"
        if kind == 9:
            return f"label $out | ({sub()}), break $out"
        return f"({sub()}) {r.choice(BINARY)} ({sub()})"

    def path(self, depth=2, with_try=False, optional=True, shape=None):
        r = self.rng
        leaves = SHAPED_LEAVES[shape] if shape else PATH_LEAVES
        if not optional:
            leaves = tuple(p for p in leaves if "?" not in p)
        if depth == 0 or r.random() < 0.3:
            return r.choice(leaves)
        sub = lambda: self.path(depth - 1, with_try, optional, shape)
        kind = r.randrange(8 if with_try else 7)
        if kind == 0:
            return f"({sub()}) | ({sub()})"
        if kind == 1:
            return f"({sub()}), ({sub()})"
        if kind == 2:
            return f"({sub()}) // ({sub()})"
        if kind == 3:
            return f"({self.filter(0)}) as $c | if $c then ({sub()}) else ({sub()}) end"
        if kind == 4:
            return f"select({self.filter(0)}) | ({sub()})"
        if kind == 5:
            return f"reduce (0, 0) as $i (.; ({sub()}))"
        if kind == 6:
            return f"foreach (0, 1) as $i (.; ({sub()}))"
        return f"try ({sub()}) catch ({self.filter(0)})"

    def rhs(self):
        """An update right-hand side that mostly succeeds on scalars."""
        r = self.rng
        if r.random() < 0.5:
            return r.choice((". , .", "[.]", "empty", "1", '{"w": .}', "null", "(. | length?), 2", "error"))
        return self.filter(1)

    def update_case(self, optional=True, with_try=False, depth=2):
        """A shape, a document of that shape and a way to draw matching paths."""
        shape = self.rng.choice(("array", "object"))
        v = self.doc(shape) if self.rng.random() < 0.85 else self.value()
        return v, lambda d=depth: self.path(d, with_try, optional, shape)


def struct_float(r):
    """A float with arbitrary bits, so subnormals and odd exponents show up."""
    return struct.unpack("<d", r.getrandbits(64).to_bytes(8, "little"))[0]


def cases(n=1000, seed=0):
    """Yield ``(case_seed, Gen)`` pairs."""
    for i in range(n):
        s = seed * 1_000_003 + i
        yield s, Gen(s)
