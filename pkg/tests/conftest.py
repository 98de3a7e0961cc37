import re

import pytest

_results = {}


def _criterion(item):
    m = re.match(r"test_criterion_(\d+)", item.name)
    return int(m.group(1)) if m else None


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = _criterion(item)
    if number is None or item.module.__name__.split(".")[-1] != "test_acceptance":
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        title = item.module.CRITERIA[number]
        passed = report.passed and not hasattr(report, "wasxfail")
        entry = _results.setdefault(number, {"title": title, "passed": True, "notes": []})
        entry["passed"] = entry["passed"] and passed
        if hasattr(report, "wasxfail"):
            entry["notes"].append(report.wasxfail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["passed"] else "FAIL"
        line = f"criterion {number}: {status}  {entry['title']}"
        for note in entry["notes"]:
            line += f"  [{note}]"
        terminalreporter.write_line(line)
