"""Per-criterion summary for tests marked ``@pytest.mark.criterion(k, text)``.

A criterion is reported PASS only when every test carrying its number
passed. An expected failure is reported as FAIL together with its reason.
"""
import pytest

_OUTCOMES: dict[int, list[tuple[str, str, str]]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k, title = mark.args
    _TITLES[k] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status, note = "xfail", rep.wasxfail
        else:
            status, note = rep.outcome, ""
        _OUTCOMES.setdefault(k, []).append((item.name, status, note))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_OUTCOMES):
        parts = _OUTCOMES[k]
        ok = all(status == "passed" for _, status, _ in parts)
        tr.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {_TITLES[k]}")
        for name, status, note in parts:
            if status != "passed":
                tr.write_line(f"    {name}: {status}{': ' + note if note else ''}")
