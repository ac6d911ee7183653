import pytest

CRITERIA = {
    1: "Bell plateau",
    2: "closed form vs oracle",
    3: "overlap identity",
    4: "rotation consistency",
    5: "Wootters sanity",
    6: "pure-state reduction",
    7: "bound containment",
    8: "orthogonal-component equality",
    9: "spin monotonicity",
    10: "figure 3/4 scan shapes",
    11: "determinism",
}

_outcomes: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    report = outcome.get_result()
    number = marker.args[0]
    if report.failed:
        _outcomes[number] = "FAIL"
    elif report.when == "call" and _outcomes.get(number) != "FAIL":
        _outcomes[number] = "SKIP" if report.skipped else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, name in CRITERIA.items():
        status = _outcomes.get(number, "NOT RUN")
        terminalreporter.write_line(f"{status:7} criterion {number:2d}: {name}")
