import pytest

_results: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    item_marks = getattr(report, "criterion", None)
    if item_marks is None:
        return
    outcome = "xfail" if hasattr(report, "wasxfail") else report.outcome
    _results.setdefault(item_marks, []).append(outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        ok = all(o == "passed" for o in outcomes)
        note = "" if ok else f"  ({', '.join(sorted(set(outcomes)))})"
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}{note}")
