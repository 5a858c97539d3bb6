import json
import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def conway_reference():
    """KnotInfo Conway polynomials, {name: [(power of z, coefficient), ...]}."""
    return json.loads((DATA / "knotinfo_conway.json").read_text())


_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((name, "PASS" if report.passed else "FAIL",
                            getattr(report, "criterion_title", "")))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    doc = (item.function.__doc__ or "").strip().splitlines()
    report.criterion_title = doc[0] if doc else ""


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, title in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}: {title}")
