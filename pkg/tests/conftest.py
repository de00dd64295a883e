import pytest

from heisconj.documents import catalog_paths, parse_group_spec
from heisconj.heis import ExtGroup


@pytest.fixture(scope="session")
def catalog():
    models = {}
    for path in catalog_paths():
        try:
            m = parse_group_spec(path)
        except ValueError:
            continue
        models[m.name] = m
    return models


@pytest.fixture(scope="session")
def small64(catalog):
    return catalog["small64"].group


@pytest.fixture(scope="session")
def zgroup():
    return ExtGroup.integer()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
