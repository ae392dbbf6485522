import pytest

from skelcat.fileio import load_corpus
from skelcat.pretorsion import default_probes

CORPUS = load_corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def probes():
    return default_probes()


def cat(name):
    return CORPUS[name]


_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.failed or (rep.when == "call" and number not in _CRITERIA):
        _CRITERIA[number] = ("FAIL" if rep.failed else "PASS", title)
    elif rep.skipped:
        _CRITERIA.setdefault(number, ("SKIP", title))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")
