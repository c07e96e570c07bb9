import pytest

from gl2sets.finite_field import field_of_order
from gl2sets.linear_group import build_group
from oracles import BruteGroup, PolyField

ORDERS = (2, 3, 4, 5, 7, 8, 9)
SMALL = (2, 3, 4, 5)


def poly_field(group) -> PolyField:
    F = group.base
    return PolyField(F.characteristic, F.modulus)


def as_tuple(group, F: PolyField, i: int) -> tuple:
    return tuple(F.elements[int(e)] for e in group.entries[i])


def brute(group) -> tuple[BruteGroup, dict]:
    """Brute-force twin of ``group`` plus a map from matrix tuples to element indices."""
    F = poly_field(group)
    bg = BruteGroup(F)
    index = {as_tuple(group, F, i): i for i in range(group.order)}
    return bg, index


@pytest.fixture(scope="session")
def groups():
    return {q: build_group(field_of_order(q)) for q in ORDERS}


# one summary line per acceptance criterion

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[n] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
