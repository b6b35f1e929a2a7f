"""Command-line driver.

Exit status: 0 success, 2 usage or I/O problem, 3 program does not compile,
4 malformed JSON input, 5 at least one runtime error was reported.
"""

from __future__ import annotations

import argparse
import sys
import threading
from dataclasses import dataclass, field

from mjq.frontend.parser import ParseError
from mjq.jsonio import JsonError, decode_bytes, read_values, write_value
from mjq.program import CompileError, compile_program
from mjq.values import Error, Exc

EXIT_OK, EXIT_USAGE, EXIT_COMPILE, EXIT_JSON, EXIT_RUNTIME = 0, 2, 3, 4, 5

# deep user recursion runs on a big private stack before it turns into a
# resource error
_STACK_BYTES = 512 * 1024 * 1024
_RECURSION_LIMIT = 60_000


@dataclass
class RunConfig:
    program_text: str
    program_origin: str = "<program>"
    null_input: bool = False
    input_paths: list = field(default_factory=list)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mjq", description="Run a jq filter over JSON values.")
    p.add_argument("-n", "--null-input", action="store_true", help="use null as the single input")
    p.add_argument("-f", "--from-file", metavar="FILE", help="read the filter from FILE")
    p.add_argument("args", nargs="*", metavar="FILTER [FILE ...]")
    return p


def parse_args(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    paths = list(ns.args)
    if ns.from_file is not None:
        try:
            with open(ns.from_file, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as e:
            parser.exit(EXIT_USAGE, f"mjq: cannot read filter file: {e}\n")
        origin = ns.from_file
    else:
        if not paths:
            parser.error("a FILTER argument is required unless -f is given")
        text, origin = paths.pop(0), "<program>"
    return RunConfig(text, origin, ns.null_input, paths)


def _inputs(cfg: RunConfig, stdin):
    if cfg.null_input:
        yield None
        return
    sources = cfg.input_paths or ["-"]
    for path in sources:
        if path == "-":
            data = stdin.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
        yield from read_values(decode_bytes(data))


def run(cfg: RunConfig, stdin, stdout, stderr) -> int:
    """Run one configuration; ``stdin`` yields bytes, the outputs take text."""
    try:
        program = compile_program(cfg.program_text)
    except ParseError as e:
        stderr.write(e.render(cfg.program_origin) + "\n")
        return EXIT_COMPILE
    except CompileError as e:
        stderr.write(e.render(cfg.program_origin) + "\n")
        return EXIT_COMPILE

    status = EXIT_OK
    try:
        for value in _inputs(cfg, stdin):
            for out in program.run(value):
                if isinstance(out, Exc):
                    status = EXIT_RUNTIME
                    stderr.write("error: " + _describe(out) + "\n")
                else:
                    stdout.write(write_value(out) + "\n")
    except JsonError as e:
        stderr.write(f"mjq: {e}\n")
        return EXIT_JSON
    except OSError as e:
        stderr.write(f"mjq: {e}\n")
        return EXIT_USAGE
    return status


def _describe(x) -> str:
    if type(x) is Error:
        return write_value(x.payload)
    return f"break ${x.name} outside its label"


def main(argv=None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    stdout = open(sys.stdout.fileno(), "w", encoding="utf-8", errors="backslashreplace", closefd=False)
    stderr = open(sys.stderr.fileno(), "w", encoding="utf-8", errors="backslashreplace", closefd=False)
    result = [EXIT_OK]

    def work():
        result[0] = run(cfg, sys.stdin.buffer, stdout, stderr)

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size(_STACK_BYTES)
    sys.setrecursionlimit(_RECURSION_LIMIT)
    try:
        t = threading.Thread(target=work)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
        stdout.flush()
        stderr.flush()
    return result[0]


if __name__ == "__main__":
    sys.exit(main())
