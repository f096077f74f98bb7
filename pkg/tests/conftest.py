import re

from test_acceptance import CRITERIA


def pytest_terminal_summary(terminalreporter):
    outcome = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_acceptance\.py::test_c(\d+)_", rep.nodeid)
            if m and (rep.when == "call" or key == "error"):
                outcome[int(m.group(1))] = "PASS" if key == "passed" else "FAIL"
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for k, name in CRITERIA.items():
        terminalreporter.write_line(f"criterion {k:2d} {outcome.get(k, 'NOT RUN'):7s} {name}")
