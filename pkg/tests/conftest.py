"""Prints one pass/fail line per acceptance criterion after the run."""
import pytest

_results: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    label = marker.args[0] if marker.args else item.name
    detail = getattr(item, "acceptance_detail", "")
    _results[label] = ("PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results):
        status, detail = _results[label]
        terminalreporter.write_line(f"{status}  {label}" + (f"  ({detail})" if detail else ""))
