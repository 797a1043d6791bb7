import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[tuple[int, str], str] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        if _results.get(key) != "FAIL":
            _results[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_results.items()):
        terminalreporter.write_line(f"{verdict}  criterion {num:2d}: {name}")
    n_pass = sum(v == "PASS" for v in _results.values())
    terminalreporter.write_line(f"{n_pass}/{len(_results)} criteria pass")
