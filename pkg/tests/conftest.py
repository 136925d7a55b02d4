import pytest

from antilattices.core import make_flat
from antilattices.enumeration import all_antilattices, regular_antilattices
from oracles import all_band_tables

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def band_tables():
    """Labeled band tables (as nested lists) keyed by order, n <= 5."""
    return {n: all_band_tables(n) for n in range(1, 6)}


@pytest.fixture(scope="session")
def antilattices_upto4():
    return [A for n in range(1, 5) for A in all_antilattices(n)]


@pytest.fixture(scope="session")
def regular_upto6():
    return {n: regular_antilattices(n) for n in range(1, 7)}


@pytest.fixture
def flats():
    return {c: make_flat(2, c) for c in ("LL", "LR", "RL", "RR")}


@pytest.fixture
def criterion(request):
    """Record one acceptance verdict line per test for the terminal summary."""
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0] if marker else request.node.name
    yield
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    _ACCEPTANCE.append(f"{status}  {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")
    config.addinivalue_line("markers", "slow: long-running exhaustive checks")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
