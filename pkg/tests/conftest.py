import pytest

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        previous = _outcomes.get(marker, "PASS")
        _outcomes[marker] = "FAIL" if report.failed or previous == "FAIL" else (
            "SKIP" if report.skipped else previous)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), status in sorted(_outcomes.items()):
        terminalreporter.write_line(f"criterion {n:>2}  {status}  {title}")
