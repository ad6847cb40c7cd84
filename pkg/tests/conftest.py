import pytest

from spreadec.spread_code import make_params

_CRITERIA: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test implements")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    _CRITERIA.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: (len(s), s)):
        results = _CRITERIA[label]
        ok = all(o == "passed" for _, o in results)
        detail = ", ".join(f"{name}={o}" for name, o in results)
        terminalreporter.write_line(f"criterion {label}: {'PASS' if ok else 'FAIL'}  ({detail})")


@pytest.fixture(scope="session")
def code232():
    return make_params(2, 3, 2)


@pytest.fixture(scope="session")
def code222():
    return make_params(2, 2, 2)


@pytest.fixture(scope="session")
def code322():
    return make_params(3, 2, 2)


@pytest.fixture(scope="session")
def code422():
    return make_params(4, 2, 2)
