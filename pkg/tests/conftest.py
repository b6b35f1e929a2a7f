"""Print a PASS/FAIL line for every acceptance criterion at the end of a run."""

import re

_AC = re.compile(r"test_acceptance\.py::test_(ac\d+)_(\w+)")
_results: dict = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.failed:
        key = (m.group(1).upper(), m.group(2))
        if report.failed or key not in _results:
            _results[key] = "FAIL" if report.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (ac, name), verdict in sorted(_results.items(), key=lambda kv: (int(kv[0][0][2:]), kv[0][1])):
        terminalreporter.write_line(f"{verdict} {ac} {name}")
